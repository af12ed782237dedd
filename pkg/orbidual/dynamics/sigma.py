"""Involutive self-adjoint operators E on h and their (G, B) block decomposition."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from orbidual.core.errors import DomainError, SingularBlockError
from orbidual.groups.double import DoubleGroup
from orbidual.liecore.double import DoubleLieAlgebra

log = logging.getLogger("orbidual.dynamics")

OPERATOR_TOL = 1e-12
BLOCK_CONDITION_LIMIT = 1e12


@dataclass(frozen=True, eq=False)
class SigmaOperator:
    matrix: np.ndarray
    algebra: DoubleLieAlgebra

    def __post_init__(self) -> None:
        e = np.array(self.matrix, dtype=float)
        d = self.algebra.dim
        if e.shape != (d, d):
            raise DomainError(f"operator must be {d}x{d}, got {e.shape}")
        e.setflags(write=False)
        object.__setattr__(self, "matrix", e)
        scale = max(1.0, float(np.abs(e).max()))
        if self.adjointness_residual > OPERATOR_TOL * scale ** 2:
            raise DomainError(f"operator is not self-adjoint (residual {self.adjointness_residual:.3e})")
        if self.involution_residual > OPERATOR_TOL * scale ** 2:
            raise DomainError(f"operator is not an involution (residual {self.involution_residual:.3e})")

    @property
    def adjointness_residual(self) -> float:
        j = self.algebra.psi
        return float(np.abs(self.matrix.T @ j - j @ self.matrix).max())

    @property
    def involution_residual(self) -> float:
        return float(np.abs(self.matrix @ self.matrix - np.eye(self.algebra.dim)).max())


@dataclass(frozen=True)
class SigmaBlocks:
    """E_g = Ad_{g^-1} E Ad_g with G = (n-row, n*-column block)^-1 and B = -G (n-row, n-column block)."""

    e_g: np.ndarray
    G: np.ndarray
    B: np.ndarray

    def reassemble(self) -> np.ndarray:
        g_inv = np.linalg.inv(self.G)
        return np.block([
            [-g_inv @ self.B, g_inv],
            [self.G - self.B @ g_inv @ self.B, self.B @ g_inv],
        ])

    def reassembly_residual(self) -> float:
        return float(np.abs(self.reassemble() - self.e_g).max())

    def symmetry_residual(self) -> float:
        return float(max(np.abs(self.G - self.G.T).max(), np.abs(self.B + self.B.T).max()))


def swap_operator(algebra: DoubleLieAlgebra) -> SigmaOperator:
    """E(X, xi) = (psi-bar xi, psi X)."""
    return SigmaOperator(algebra.psi.copy(), algebra)


def conjugated(double: DoubleGroup, op: SigmaOperator, g: np.ndarray) -> np.ndarray:
    total = double.total
    return total.adjoint_matrix(np.linalg.inv(g)) @ op.matrix @ total.adjoint_matrix(g)


def _inverse_block(block: np.ndarray, what: str) -> np.ndarray:
    cond = np.linalg.cond(block)
    if not np.isfinite(cond) or cond > BLOCK_CONDITION_LIMIT:
        raise SingularBlockError(f"{what} is not invertible (cond {cond:.2e})")
    return np.linalg.inv(block)


def sigma_blocks(double: DoubleGroup, op: SigmaOperator, g: np.ndarray) -> SigmaBlocks:
    n = double.n
    e_g = conjugated(double, op, g)
    G = _inverse_block(e_g[:n, n:], f"n/n* block of E_g at g={np.round(g, 6).tolist()}")
    return SigmaBlocks(e_g, G, -G @ e_g[:n, :n])


def dual_sigma_blocks(double: DoubleGroup, op: SigmaOperator, htilde: np.ndarray) -> SigmaBlocks:
    """The n*-row counterpart: G~ = (n*-row, n-column block)^-1, B~ = -G~ (n*-row, n*-column block)."""
    n = double.n
    e_h = conjugated(double, op, htilde)
    G = _inverse_block(e_h[n:, :n], f"n*/n block of E_h at h={np.round(htilde, 6).tolist()}")
    return SigmaBlocks(e_h, G, -G @ e_h[n:, n:])


def master_identity_residual(blocks: SigmaBlocks, qdot: np.ndarray, qprime: np.ndarray) -> float:
    """|1/2 <qdot - q', (G+B)(qdot + q')> - (<p, qdot> - 1/2 <(q', p), J E_g (q', p)>)| with p = G qdot + B q'."""
    n = blocks.G.shape[0]
    j = np.block([[np.zeros((n, n)), np.eye(n)], [np.eye(n), np.zeros((n, n))]])
    p = blocks.G @ qdot + blocks.B @ qprime
    w = np.r_[qprime, p]
    lhs = 0.5 * (qdot - qprime) @ (blocks.G + blocks.B) @ (qdot + qprime)
    rhs = p @ qdot - 0.5 * w @ j @ blocks.e_g @ w
    return abs(float(lhs - rhs))


def random_involution(
    algebra: DoubleLieAlgebra,
    rng: np.random.Generator,
    *,
    scale: float = 0.3,
    conditioning_bound: float = 1e6,
    attempts: int = 50,
) -> SigmaOperator:
    """E = S J S^-1 with S = exp(J K), K antisymmetric, so S preserves the pairing J."""
    j = algebra.psi
    n = algebra.n
    d = algebra.dim
    for _ in range(attempts):
        k = rng.normal(scale=scale, size=(d, d))
        s = expm(j @ (k - k.T))
        e = s @ j @ np.linalg.inv(s)
        e = 0.5 * (e + j @ e.T @ j)
        if np.linalg.cond(e[:n, n:]) < conditioning_bound:
            return SigmaOperator(e, algebra)
    raise SingularBlockError(f"no well-conditioned involution found in {attempts} attempts")
