"""orbidual: collective Hamiltonian dynamics and duality on double Lie groups."""

__version__ = "0.3.0"
