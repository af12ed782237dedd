"""Double Lie algebras h = n + n* assembled from bialgebra data."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from orbidual.core.errors import DimensionError, DomainError
from orbidual.liecore.algebra import AlgebraElement, LieAlgebra

log = logging.getLogger("orbidual.liecore")

N = "n"
NSTAR = "nstar"


@dataclass(frozen=True, eq=False)
class DoubleLieAlgebra:
    """Coordinates ``(x, y)`` with ``x`` in n (first half) and ``y`` in n* (second half).

    The invariant pairing is ``((x, y), (x', y')) = x.y' + y.x'`` so ``psi`` (h -> h*)
    swaps the two halves and is its own inverse.
    """

    total: LieAlgebra
    n_algebra: LieAlgebra
    nstar_algebra: LieAlgebra

    @property
    def n(self) -> int:
        return self.n_algebra.dim

    @property
    def dim(self) -> int:
        return self.total.dim

    @property
    def factor_n(self) -> range:
        return range(0, self.n)

    @property
    def factor_nstar(self) -> range:
        return range(self.n, 2 * self.n)

    @cached_property
    def psi(self) -> np.ndarray:
        return np.array(self.total.pairing)

    @cached_property
    def psi_inv(self) -> np.ndarray:
        return np.linalg.inv(self.psi)

    @cached_property
    def pi_n(self) -> np.ndarray:
        return np.diag(np.r_[np.ones(self.n), np.zeros(self.n)])

    @cached_property
    def pi_nstar(self) -> np.ndarray:
        return np.diag(np.r_[np.zeros(self.n), np.ones(self.n)])

    def projector(self, which: str) -> np.ndarray:
        if which == N:
            return self.pi_n
        if which == NSTAR:
            return self.pi_nstar
        raise DomainError(f"unknown factor {which!r} (use 'n' or 'nstar')")

    # -- embeddings ------------------------------------------------------------

    def from_n(self, x: np.ndarray) -> np.ndarray:
        return np.r_[np.asarray(x, dtype=float), np.zeros(self.n)]

    def from_nstar(self, y: np.ndarray) -> np.ndarray:
        return np.r_[np.zeros(self.n), np.asarray(y, dtype=float)]

    def to_dual(self, z: np.ndarray) -> np.ndarray:
        """psi: h -> h*."""
        return self.psi @ z

    def from_dual(self, xi: np.ndarray) -> np.ndarray:
        """psi-bar: h* -> h."""
        return self.psi_inv @ xi

    def pair(self, z: np.ndarray, w: np.ndarray) -> float:
        return self.total.pair(z, w)


def _mixed_structure(c: np.ndarray, cstar: np.ndarray) -> np.ndarray:
    """[(X,0),(0,xi)] = (ad*_xi X, -ad*_X xi) with ad* the transposed adjoint."""
    n = c.shape[0]
    total = np.zeros((2 * n, 2 * n, 2 * n))
    total[:n, :n, :n] = c
    total[n:, n:, n:] = cstar
    for i in range(n):
        for j in range(n):
            total[i, n + j, :n] = cstar[j, :, i]
            total[i, n + j, n:] = -c[i, :, j]
            total[n + j, i] = -total[i, n + j]
    return total


def build_double(
    n_algebra: LieAlgebra,
    nstar_algebra: LieAlgebra,
    duality_pairing: np.ndarray | None = None,
    name: str | None = None,
) -> DoubleLieAlgebra:
    """Assemble h = n + n*; Jacobi of the result encodes bialgebra compatibility.

    ``duality_pairing[i, j] = <X_i, xi_j>``; the n* basis is rebased so the
    block pairing becomes the identity.
    """
    if n_algebra.dim != nstar_algebra.dim:
        raise DimensionError(
            f"factor dimensions differ: {n_algebra.name}={n_algebra.dim}, {nstar_algebra.name}={nstar_algebra.dim}"
        )
    n = n_algebra.dim
    if duality_pairing is not None:
        p = np.asarray(duality_pairing, dtype=float)
        if p.shape != (n, n):
            raise DimensionError(f"duality pairing must be {n}x{n}")
        if not np.allclose(p, np.eye(n), atol=1e-14):
            nstar_algebra = nstar_algebra.change_basis(np.linalg.inv(p), name=nstar_algebra.name)
            log.debug("rebased %s so that the block pairing is the identity", nstar_algebra.name)
    structure = _mixed_structure(n_algebra.structure, nstar_algebra.structure)
    pairing = np.block([[np.zeros((n, n)), np.eye(n)], [np.eye(n), np.zeros((n, n))]])
    labels = n_algebra.labels + nstar_algebra.labels
    total = LieAlgebra(name or f"D({n_algebra.name})", structure, labels, pairing)
    return DoubleLieAlgebra(total, n_algebra, nstar_algebra)


def project_factor(z: AlgebraElement, which: str, double: DoubleLieAlgebra) -> AlgebraElement:
    if z.home is not double.total:
        raise DomainError(f"{z.home.name} is not the total algebra of a double")
    return AlgebraElement(double.projector(which) @ z.coeffs, z.home)
