"""Collective Hamiltonians h on the extended dual."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from orbidual.core.errors import DomainError
from orbidual.hamspaces.base import HamiltonianSpace, PhasePoint
from orbidual.liecore.builtins import RigidBodyConstants

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class CollectiveHamiltonian:
    """Quadratic ``h = 1/2 xi.Q.xi`` or a custom function with its gradient (values in h)."""

    q: np.ndarray | None = None
    func: Callable[[np.ndarray], float] | None = field(default=None, repr=False)
    grad: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)
    name: str = "custom"

    def __post_init__(self) -> None:
        if self.q is not None:
            q = np.asarray(self.q, dtype=float)
            if np.abs(q - q.T).max(initial=0.0) > SYMMETRY_TOL * max(1.0, np.abs(q).max(initial=0.0)):
                raise DomainError(f"{self.name}: quadratic form is not symmetric")
            object.__setattr__(self, "q", q)
        elif self.func is None or self.grad is None:
            raise DomainError(f"{self.name}: need a quadratic form or both func and grad")

    @property
    def form(self) -> str:
        return "quadratic" if self.q is not None else "custom"

    def __call__(self, xi: np.ndarray) -> float:
        xi = np.asarray(xi, dtype=float)
        if self.q is not None:
            return float(0.5 * xi @ self.q @ xi)
        return float(self.func(xi))  # type: ignore[misc]

    def gradient(self, xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        if self.q is not None:
            return self.q @ xi
        return np.asarray(self.grad(xi), dtype=float)  # type: ignore[misc]

    def lifted(self, space: HamiltonianSpace) -> Callable[[PhasePoint], float]:
        """H = h o mu on the space."""
        return lambda p: self(space.momentum(p).xi)


def zero_hamiltonian(dim: int) -> CollectiveHamiltonian:
    return CollectiveHamiltonian(np.zeros((dim, dim)), name="zero")


def sigma_hamiltonian(e: np.ndarray, pairing: np.ndarray) -> CollectiveHamiltonian:
    """h(xi) = 1/2 (psi-bar xi, E psi-bar xi)_h, i.e. Q = E J for the block pairing J."""
    q = np.asarray(e, dtype=float) @ np.asarray(pairing, dtype=float)
    return CollectiveHamiltonian(0.5 * (q + q.T), name="sigma")


def rigid_body_hamiltonian(constants: RigidBodyConstants) -> CollectiveHamiltonian:
    """h(beta) = 1/2 (n2 beta_2^2 + beta_3^2) in the rigid-body basis of se(2)*."""
    return CollectiveHamiltonian(np.diag([0.0, constants.n2, 1.0]), name="rigid_body")
