"""Common machinery for Hamiltonian H-spaces in left-trivialized coordinates.

A point is ``(base, fiber)`` with ``base`` a matrix of the base group and
``fiber`` a coordinate vector.  Tangent vectors are flat arrays
``(v, f)``: ``v`` the body velocity ``base^-1 d(base)`` and ``f`` the fiber
velocity.  A symplectic form is a matrix ``Omega(point)`` with
``omega(t1, t2) = t1 @ Omega @ t2``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from orbidual.core.errors import DimensionError, NumericalError, TagCombinationError
from orbidual.extension.cocycle import Cocycle, ExtendedDual
from orbidual.extension.poisson import FD_STEP
from orbidual.groups.matrix import LieGroup

log = logging.getLogger("orbidual.hamspaces")

GENERATOR_STEP = 1e-5
CONDITION_LIMIT = 1e12

SpaceFunction = Callable[["PhasePoint"], float]


@dataclass(frozen=True)
class PhasePoint:
    base: np.ndarray
    fiber: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", np.asarray(self.base))
        object.__setattr__(self, "fiber", np.asarray(self.fiber, dtype=float))


class HamiltonianSpace:
    """Base class; subclasses define ``omega_matrix``, ``act`` and ``momentum``."""

    kind: str = "space"
    polarity: int = 1
    degenerate: bool = False
    allowed_tags: frozenset[tuple[str, str, str]] = frozenset()

    def __init__(
        self,
        base_group: LieGroup,
        acting_group: LieGroup,
        fiber_dim: int,
        target: Cocycle,
        *,
        symplectic: str,
        action: str,
        momentum: str,
    ):
        self.base_group = base_group
        self.acting_group = acting_group
        self.fiber_dim = fiber_dim
        self.target = target
        self.symplectic = symplectic
        self.action_tag = action
        self.momentum_tag = momentum
        if self.allowed_tags and (symplectic, action, momentum) not in self.allowed_tags:
            allowed = ", ".join("/".join(t) for t in sorted(self.allowed_tags))
            raise TagCombinationError(
                f"{self.kind}: {symplectic}/{action}/{momentum} is not defined (allowed: {allowed})"
            )

    # -- to be provided ----------------------------------------------------------

    def omega_matrix(self, point: PhasePoint) -> np.ndarray:
        raise NotImplementedError

    def act(self, l: np.ndarray, point: PhasePoint) -> PhasePoint:
        raise NotImplementedError

    def momentum(self, point: PhasePoint) -> ExtendedDual:
        raise NotImplementedError

    # -- geometry ------------------------------------------------------------------

    @property
    def base_dim(self) -> int:
        return self.base_group.algebra.dim

    @property
    def dim(self) -> int:
        return self.base_dim + self.fiber_dim

    def tags(self) -> dict[str, str]:
        return {"kind": self.kind, "symplectic": self.symplectic, "action": self.action_tag,
                "momentum": self.momentum_tag}

    def point(self, base: np.ndarray | None = None, fiber: np.ndarray | None = None) -> PhasePoint:
        base = self.base_group.identity if base is None else base
        fiber = np.zeros(self.fiber_dim) if fiber is None else fiber
        return PhasePoint(base, fiber)

    def _check_tangent(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if t.shape != (self.dim,):
            raise DimensionError(f"{self.kind}: tangent needs {self.dim} components, got {t.shape}")
        return t

    def symplectic_eval(self, point: PhasePoint, t1: np.ndarray, t2: np.ndarray) -> float:
        return float(self._check_tangent(t1) @ self.omega_matrix(point) @ self._check_tangent(t2))

    def retract(self, point: PhasePoint, t: np.ndarray) -> PhasePoint:
        t = self._check_tangent(t)
        v, f = t[: self.base_dim], t[self.base_dim:]
        return PhasePoint(point.base @ self.base_group.exp(v), point.fiber + f)

    def differential(self, func: SpaceFunction, point: PhasePoint, step: float = FD_STEP) -> np.ndarray:
        """Central differences of *func* along the retraction, in tangent coordinates."""
        out = np.empty(self.dim)
        for i, e in enumerate(np.eye(self.dim)):
            out[i] = (func(self.retract(point, step * e)) - func(self.retract(point, -step * e))) / (2.0 * step)
        return out

    def hamiltonian_vector(self, point: PhasePoint, dh: np.ndarray) -> np.ndarray:
        """Solve omega(V, .) = dH(.)."""
        omega = self.omega_matrix(point)
        if self.degenerate:
            return np.linalg.lstsq(omega.T, dh, rcond=None)[0]
        cond = np.linalg.cond(omega)
        if not np.isfinite(cond) or cond > CONDITION_LIMIT:
            raise NumericalError(f"{self.kind}: symplectic matrix is singular (cond {cond:.2e})")
        return np.linalg.solve(omega.T, dh)

    def bracket(self, point: PhasePoint, f: SpaceFunction, g: SpaceFunction, step: float = FD_STEP) -> float:
        """{f, g} = df(X_g)."""
        df = self.differential(f, point, step)
        dg = self.differential(g, point, step)
        return float(df @ self.hamiltonian_vector(point, dg))

    def body_velocity(self, base: np.ndarray, plus: np.ndarray, minus: np.ndarray, step: float) -> np.ndarray:
        m = np.linalg.inv(base) @ (plus - minus) / (2.0 * step)
        return self.base_group.pullback(m, check=False)

    def generator(self, point: PhasePoint, z: np.ndarray, step: float = GENERATOR_STEP) -> np.ndarray:
        """Infinitesimal action of Z at the point, by central differences."""
        plus = self.act(self.acting_group.exp(step * np.asarray(z, dtype=float)), point)
        minus = self.act(self.acting_group.exp(-step * np.asarray(z, dtype=float)), point)
        v = self.body_velocity(point.base, plus.base, minus.base, step)
        f = (plus.fiber - minus.fiber) / (2.0 * step)
        return np.r_[v, f]

    def distance(self, p: PhasePoint, q: PhasePoint) -> float:
        return float(np.abs(p.base - q.base).max(initial=0.0) + np.abs(p.fiber - q.fiber).max(initial=0.0))

    # -- serialization -------------------------------------------------------------

    def coordinates(self, point: PhasePoint) -> np.ndarray:
        return np.asarray(point.fiber, dtype=float)

    def coordinate_labels(self) -> list[str]:
        return [f"fiber_{i}" for i in range(self.fiber_dim)]

    def base_matrix(self, point: PhasePoint) -> np.ndarray:
        return np.asarray(point.base)


def cotangent_omega(bracket_form: np.ndarray) -> np.ndarray:
    """[[B, I], [-I, 0]]: -<f1, v2> + <f2, v1> + <fiber, [v1, v2]>."""
    d = bracket_form.shape[0]
    eye = np.eye(d)
    return np.block([[bracket_form, eye], [-eye, np.zeros((d, d))]])
