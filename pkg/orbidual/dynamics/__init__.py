"""Collective flows, the duality engine, and the sigma/chiral Lagrangian toolkit."""

from __future__ import annotations

from orbidual.dynamics.duality import DualityReport, duality_run
from orbidual.dynamics.flows import (
    Trajectory,
    collective_trajectory,
    direct_trajectory,
    lie_poisson_flow,
    reconstruct_group_curve,
)
from orbidual.dynamics.hamiltonians import CollectiveHamiltonian, rigid_body_hamiltonian, sigma_hamiltonian
from orbidual.dynamics.lagrangians import get_lagrangian, lagrangian_eval, list_lagrangians
from orbidual.dynamics.sigma import SigmaOperator, dual_sigma_blocks, sigma_blocks

__all__ = [
    "CollectiveHamiltonian",
    "DualityReport",
    "SigmaOperator",
    "Trajectory",
    "collective_trajectory",
    "direct_trajectory",
    "dual_sigma_blocks",
    "duality_run",
    "get_lagrangian",
    "lagrangian_eval",
    "lie_poisson_flow",
    "list_lagrangians",
    "reconstruct_group_curve",
    "rigid_body_hamiltonian",
    "sigma_blocks",
    "sigma_hamiltonian",
]
