"""Matrix Lie groups: exponential, pull-back to coordinates, adjoint action."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np
from scipy.linalg import expm

from orbidual.core.errors import DimensionError, NumericalError, RepresentationError
from orbidual.liecore.algebra import AlgebraElement, LieAlgebra

log = logging.getLogger("orbidual.groups")

MEMBERSHIP_TOL = 1e-8
PULLBACK_TOL = 1e-8


def _realify(m: np.ndarray) -> np.ndarray:
    """Stack real and imaginary parts of the trailing matrix axes."""
    m = np.asarray(m)
    flat = m.reshape(*m.shape[:-2], -1)
    return np.concatenate([flat.real, flat.imag], axis=-1)


@dataclass(frozen=True, eq=False)
class LieGroup:
    """A matrix group with coordinates given by ``basis[i]`` = embedded ``e_i``."""

    name: str
    algebra: LieAlgebra
    basis: np.ndarray
    membership: Callable[[np.ndarray], float] = field(repr=False)
    projector: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        basis = np.array(self.basis, dtype=complex if np.iscomplexobj(self.basis) else float)
        if basis.ndim != 3 or basis.shape[0] != self.algebra.dim or basis.shape[1] != basis.shape[2]:
            raise DimensionError(f"{self.name}: basis must have shape ({self.algebra.dim}, m, m)")
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)
        if np.linalg.matrix_rank(self._real_basis) < self.algebra.dim:
            raise RepresentationError(f"{self.name}: embedding is not injective")

    @property
    def matrix_size(self) -> int:
        return self.basis.shape[1]

    @property
    def dtype(self) -> type:
        return self.basis.dtype.type

    @cached_property
    def _real_basis(self) -> np.ndarray:
        return _realify(self.basis).T

    @cached_property
    def _pinv(self) -> np.ndarray:
        return np.linalg.pinv(self._real_basis)

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.matrix_size, dtype=self.basis.dtype)

    # -- algebra <-> matrices ------------------------------------------------

    def embed(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.algebra.dim:
            raise DimensionError(f"{self.name}: expected {self.algebra.dim} coordinates, got {x.shape[-1]}")
        return np.einsum("...i,ijk->...jk", x, self.basis)

    def pullback(self, m: np.ndarray, *, check: bool = True) -> np.ndarray:
        """Coordinates of an algebra matrix; broadcasts over leading axes."""
        v = _realify(m)
        x = v @ self._pinv.T
        if check:
            residual = np.abs(x @ self._real_basis.T - v).max(initial=0.0)
            scale = max(1.0, float(np.abs(v).max(initial=0.0)))
            if residual > PULLBACK_TOL * scale:
                raise RepresentationError(
                    f"{self.name}: matrix not in the span of the embedded algebra (residual {residual:.3e})"
                )
        return x

    def exp(self, x: np.ndarray) -> np.ndarray:
        return expm(self.embed(x))

    # -- group operations ------------------------------------------------------

    def adjoint_matrix(self, g: np.ndarray) -> np.ndarray:
        """Matrix of Ad_g on coordinates: column i holds Ad_g e_i."""
        g = np.asarray(g)
        conj = g @ self.basis @ np.linalg.inv(g)
        return self.pullback(conj).T

    def membership_residual(self, g: np.ndarray) -> float:
        return float(self.membership(np.asarray(g)))

    def project(self, g: np.ndarray) -> np.ndarray:
        if self.projector is None:
            raise NumericalError(f"{self.name}: no projection onto the group is available")
        return self.projector(np.asarray(g))

    def renormalize(self, g: np.ndarray, *, tol: float = 1e-6, context: str = "") -> np.ndarray:
        """Project back onto the group when drift exceeds *tol*; error if that fails."""
        residual = self.membership_residual(g)
        if residual <= tol:
            return g
        log.warning("%s: membership drift %.2e%s; projecting", self.name, residual, f" ({context})" if context else "")
        g = self.project(g)
        after = self.membership_residual(g)
        if after > MEMBERSHIP_TOL:
            raise NumericalError(f"{self.name}: projection left residual {after:.3e}")
        return g

    def element(self, matrix: np.ndarray, *, check: bool = True) -> GroupElement:
        return GroupElement(np.asarray(matrix), self, check=check)


@dataclass(frozen=True, eq=False)
class GroupElement:
    matrix: np.ndarray
    group: LieGroup = field(repr=False)
    check: bool = field(default=True, repr=False)

    def __post_init__(self) -> None:
        m = np.array(self.matrix)
        if m.shape != (self.group.matrix_size,) * 2:
            raise DimensionError(f"{self.group.name}: expected a {self.group.matrix_size}x{self.group.matrix_size} matrix")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if self.check:
            residual = self.group.membership_residual(m)
            if residual > MEMBERSHIP_TOL:
                raise RepresentationError(f"matrix is not in {self.group.name} (residual {residual:.3e})")

    def __matmul__(self, other: GroupElement) -> GroupElement:
        return GroupElement(self.matrix @ other.matrix, self.group, check=False)

    def inverse(self) -> GroupElement:
        return GroupElement(np.linalg.inv(self.matrix), self.group, check=False)

    @property
    def membership_residual(self) -> float:
        return self.group.membership_residual(self.matrix)


def exp_map(group: LieGroup, x: AlgebraElement | np.ndarray) -> GroupElement:
    coeffs = x.coeffs if isinstance(x, AlgebraElement) else np.asarray(x, dtype=float)
    return GroupElement(group.exp(coeffs), group)


def adjoint(l: GroupElement, x: AlgebraElement | np.ndarray, group: LieGroup | None = None) -> np.ndarray:
    """Coordinates of ``l X l^-1``; *group* defaults to the element's group."""
    group = group or l.group
    coeffs = x.coeffs if isinstance(x, AlgebraElement) else np.asarray(x, dtype=float)
    m = l.matrix @ group.embed(coeffs) @ np.linalg.inv(l.matrix)
    return group.pullback(m)


# ---------------------------------------------------------------------------
# Membership residuals and projections
# ---------------------------------------------------------------------------

def su_residual(m: np.ndarray) -> float:
    eye = np.eye(m.shape[0])
    return float(np.linalg.norm(m.conj().T @ m - eye) + abs(np.linalg.det(m) - 1.0))


def su_project(m: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(m)
    q = u @ vh
    return q / np.linalg.det(q) ** (1.0 / m.shape[0])


def an_residual(m: np.ndarray) -> float:
    lower = np.abs(np.tril(m, -1)).sum()
    diag = np.diag(m)
    return float(
        lower + np.abs(diag.imag).sum() + np.clip(-diag.real, 0.0, None).sum() + abs(np.linalg.det(m) - 1.0)
    )


def an_project(m: np.ndarray) -> np.ndarray:
    r = np.triu(m).astype(complex)
    d = np.abs(np.diag(r))
    r[np.diag_indices_from(r)] = d
    return r / np.prod(d) ** (1.0 / m.shape[0])


def sl_residual(m: np.ndarray) -> float:
    return float(abs(np.linalg.det(m) - 1.0))


def sl_project(m: np.ndarray) -> np.ndarray:
    return m / np.linalg.det(m) ** (1.0 / m.shape[0])


def se2_residual(m: np.ndarray) -> float:
    r = m[:2, :2]
    return float(
        np.linalg.norm(r.T @ r - np.eye(2)) + abs(np.linalg.det(r) - 1.0) + np.abs(m[2] - [0.0, 0.0, 1.0]).sum()
    )


def se2_project(m: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(m[:2, :2])
    out = np.eye(3)
    out[:2, :2] = u @ vh
    out[:2, 2] = m[:2, 2]
    return out


def translation_residual(m: np.ndarray) -> float:
    k = m.shape[0] - 1
    expected = np.eye(k + 1)
    expected[:k, k] = m[:k, k]
    return float(np.abs(m - expected).sum())


def translation_project(m: np.ndarray) -> np.ndarray:
    k = m.shape[0] - 1
    out = np.eye(k + 1)
    out[:k, k] = m[:k, k].real
    return out
