"""Ad*-cocycles C, coboundary shifts C_theta and the extended coadjoint action.

Dual vectors are coordinate arrays against the algebra basis.  With
``A(l)`` the adjoint matrix, ``Ad*_{l^-1} = A(l^-1)^T`` and every cocycle obeys

    C(l k) = Ad*_{l^-1} C(k) + C(l).

``chat`` is ``-dC`` at the identity, and the derived two-cocycle is
``c(X, Y) = <chat X, Y>``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from orbidual.core.errors import ConfigurationError, DimensionError
from orbidual.core.logs import note_once
from orbidual.extension import register_cocycle
from orbidual.groups.matrix import LieGroup

log = logging.getLogger("orbidual.extension")

ZERO = "zero"
COBOUNDARY = "coboundary"
LOOP = "loop_k"
CUSTOM = "custom"


def coadjoint_matrix(group: LieGroup, l: np.ndarray) -> np.ndarray:
    """Matrix of Ad*_{l^-1} on dual coordinates."""
    return group.adjoint_matrix(np.linalg.inv(l)).T


def coboundary_chat(group: LieGroup, theta: np.ndarray) -> np.ndarray:
    """Column i holds ad*_{e_i} theta."""
    alg = group.algebra
    return np.stack([alg.ad_matrix(e).T @ theta for e in np.eye(alg.dim)], axis=1)


class Cocycle:
    kind: str = CUSTOM

    def __init__(self, group: LieGroup):
        self.group = group

    @property
    def dim(self) -> int:
        return self.group.algebra.dim

    def __call__(self, l: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def chat(self) -> np.ndarray:
        raise NotImplementedError

    def two_cocycle(self, x: np.ndarray, y: np.ndarray) -> float:
        return float(np.asarray(y) @ self.chat @ np.asarray(x))

    def form_matrix(self) -> np.ndarray:
        """``F`` with ``c(X, Y) = X^T F Y``."""
        return self.chat.T

    def shifted(self, theta: np.ndarray) -> ShiftedCocycle:
        return ShiftedCocycle(self, np.asarray(theta, dtype=float))

    def describe(self) -> dict:
        return {"kind": self.kind}

    # -- residuals -------------------------------------------------------------

    def identity_residual(self, l: np.ndarray, k: np.ndarray) -> float:
        lhs = self(l @ k)
        rhs = coadjoint_matrix(self.group, l) @ self(k) + self(l)
        return float(np.linalg.norm(lhs - rhs))

    def differential_residual(self, step: float = 1e-6) -> float:
        """``|chat + dC|`` with dC by central differences along the basis."""
        cols = []
        for e in np.eye(self.dim):
            plus = self(self.group.exp(step * e))
            minus = self(self.group.exp(-step * e))
            cols.append((plus - minus) / (2.0 * step))
        return float(np.abs(self.chat + np.stack(cols, axis=1)).max())

    def antisymmetry_residual(self) -> float:
        return float(np.abs(self.chat + self.chat.T).max())


class ZeroCocycle(Cocycle):
    kind = ZERO

    def __call__(self, l: np.ndarray) -> np.ndarray:
        return np.zeros(self.dim)

    @cached_property
    def chat(self) -> np.ndarray:
        return np.zeros((self.dim, self.dim))


class CoboundaryCocycle(Cocycle):
    """B_theta(l) = Ad*_{l^-1} theta - theta."""

    kind = COBOUNDARY

    def __init__(self, group: LieGroup, theta: np.ndarray):
        super().__init__(group)
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (self.dim,):
            raise DimensionError(f"theta needs {self.dim} coordinates, got {theta.shape}")
        self.theta = theta

    def __call__(self, l: np.ndarray) -> np.ndarray:
        return coadjoint_matrix(self.group, l) @ self.theta - self.theta

    @cached_property
    def chat(self) -> np.ndarray:
        return coboundary_chat(self.group, self.theta)

    def describe(self) -> dict:
        return {"kind": self.kind, "theta": self.theta.tolist()}


class ShiftedCocycle(Cocycle):
    """C_theta = C - B_theta, so c_theta(X, Y) = c(X, Y) - <theta, [X, Y]>."""

    def __init__(self, base: Cocycle, theta: np.ndarray):
        super().__init__(base.group)
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (self.dim,):
            raise DimensionError(f"theta needs {self.dim} coordinates, got {theta.shape}")
        self.base = base
        self.theta = theta
        self._boundary = CoboundaryCocycle(base.group, theta)

    @property
    def kind(self) -> str:  # type: ignore[override]
        return self.base.kind

    def __call__(self, l: np.ndarray) -> np.ndarray:
        return self.base(l) - self._boundary(l)

    @cached_property
    def chat(self) -> np.ndarray:
        return self.base.chat - self._boundary.chat

    def shifted(self, theta: np.ndarray) -> ShiftedCocycle:
        return ShiftedCocycle(self.base, self.theta + np.asarray(theta, dtype=float))

    def describe(self) -> dict:
        return {**self.base.describe(), "shift": self.theta.tolist()}


def as_shifted(cocycle: Cocycle) -> ShiftedCocycle:
    if isinstance(cocycle, ShiftedCocycle):
        return cocycle
    return ShiftedCocycle(cocycle, np.zeros(cocycle.dim))


@dataclass(frozen=True)
class ExtendedDual:
    """A point (xi, b) of the centrally extended dual; b is never changed by the action."""

    xi: np.ndarray
    b: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "xi", np.asarray(self.xi, dtype=float))
        object.__setattr__(self, "b", float(self.b))


def extended_coadjoint(cocycle: Cocycle, l: np.ndarray, p: ExtendedDual) -> ExtendedDual:
    """(Ad*_{l^-1} xi + b C_theta(l), b)."""
    note_once(log, "action-law", "extended coadjoint action composes as a left action in l")
    if p.xi.shape != (cocycle.dim,):
        raise DimensionError(f"dual point needs {cocycle.dim} coordinates, got {p.xi.shape}")
    xi = coadjoint_matrix(cocycle.group, l) @ p.xi
    if p.b:
        xi = xi + p.b * cocycle(l)
    return ExtendedDual(xi, p.b)


# -- registry -----------------------------------------------------------------


@register_cocycle(ZERO)
def _zero(group: LieGroup, arg: str | None) -> Cocycle:
    return ZeroCocycle(group)


@register_cocycle(COBOUNDARY)
def _coboundary(group: LieGroup, arg: str | None) -> Cocycle:
    if not arg:
        raise ConfigurationError("coboundary cocycle needs theta, e.g. 'coboundary:1,0,0'")
    try:
        theta = np.array([float(v) for v in arg.split(",")])
    except ValueError as e:
        raise ConfigurationError(f"bad coboundary theta {arg!r}: {e}") from e
    return CoboundaryCocycle(group, theta)


@register_cocycle(LOOP)
def _loop(group: LieGroup, arg: str | None, **context):
    from orbidual.loopx.paths import LoopCocycle

    try:
        k = float(arg) if arg else 1.0
    except ValueError as e:
        raise ConfigurationError(f"bad loop level {arg!r}") from e
    return LoopCocycle(group, k, **context)
