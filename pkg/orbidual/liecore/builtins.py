"""Built-in algebras: se(2), the rigid-body basis of se(2), su(2), an(2) and their double."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from orbidual.core.errors import DomainError
from orbidual.liecore import register_algebra
from orbidual.liecore.algebra import LieAlgebra, abelian
from orbidual.liecore.double import DoubleLieAlgebra, build_double


def _from_brackets(d: int, entries: dict[tuple[int, int], dict[int, float]]) -> np.ndarray:
    c = np.zeros((d, d, d))
    for (i, j), out in entries.items():
        for k, v in out.items():
            c[i, j, k] = v
            c[j, i, k] = -v
    return c


@register_algebra("se2")
def se2() -> LieAlgebra:
    """Basis (J, P1, P2): [J,P1] = P2, [J,P2] = -P1, [P1,P2] = 0."""
    c = _from_brackets(3, {(0, 1): {2: 1.0}, (0, 2): {1: -1.0}})
    return LieAlgebra("se2", c, ("J", "P1", "P2"))


@dataclass(frozen=True)
class RigidBodyConstants:
    """Scalings for a free rigid body with I1 < I2 < I3."""

    inertia: tuple[float, float, float]

    def __post_init__(self) -> None:
        i1, i2, i3 = self.inertia
        if not (0 < i1 < i2 < i3):
            raise DomainError(f"inertia must satisfy 0 < I1 < I2 < I3, got {self.inertia}")

    @property
    def k1(self) -> float:
        i1, _, i3 = self.inertia
        return 1.0 / math.sqrt(1.0 / i1 - 1.0 / i3)

    @property
    def k2(self) -> float:
        _, i2, i3 = self.inertia
        return 1.0 / math.sqrt(1.0 / i2 - 1.0 / i3)

    @property
    def c(self) -> float:
        return self.k1 ** 2

    @property
    def n2(self) -> float:
        i1, i2, _ = self.inertia
        return self.c * (1.0 / i1 - 1.0 / i2)

    @property
    def pendulum_coefficient(self) -> float:
        """(1/I1 - 1/I2); the pendulum reads theta'' = -K * coefficient * sin(2 theta)."""
        i1, i2, _ = self.inertia
        return 1.0 / i1 - 1.0 / i2

    def casimir(self, beta: np.ndarray) -> float:
        beta = np.asarray(beta, dtype=float)
        return 0.5 * (beta[0] ** 2 / self.k1 ** 2 + beta[1] ** 2 / self.k2 ** 2)


@register_algebra("rigid_body_se2")
def rigid_body_algebra(inertia: tuple[float, float, float] = (1.0, 2.0, 3.0)) -> LieAlgebra:
    """se(2) in the basis e1 = k1 P1, e2 = k2 P2, e3 = J / (k1 k2)."""
    k = RigidBodyConstants(tuple(float(v) for v in inertia))  # type: ignore[arg-type]
    c = _from_brackets(3, {
        (2, 0): {1: 1.0 / k.k2 ** 2},
        (2, 1): {0: -1.0 / k.k1 ** 2},
    })
    return LieAlgebra("rigid_body_se2", c, ("e1", "e2", "e3"))


@register_algebra("su2")
def su2() -> LieAlgebra:
    """xi1 = diag(i,-i), xi2 = [[0,1],[-1,0]], xi3 = [[0,i],[i,0]]."""
    c = _from_brackets(3, {(0, 1): {2: 2.0}, (1, 2): {0: 2.0}, (2, 0): {1: 2.0}})
    return LieAlgebra("su2", c, ("xi1", "xi2", "xi3"))


@register_algebra("an2")
def an2() -> LieAlgebra:
    """X1 = diag(1/2,-1/2), X2 = [[0,-i],[0,0]], X3 = [[0,1],[0,0]]."""
    c = _from_brackets(3, {(0, 1): {1: 1.0}, (0, 2): {2: 1.0}})
    return LieAlgebra("an2", c, ("X1", "X2", "X3"))


@register_algebra("lu_weinstein")
def lu_weinstein() -> DoubleLieAlgebra:
    """sl(2,C) as a real algebra, n = an(2), n* = su(2), pairing Im tr(XY)."""
    return build_double(an2(), su2(), name="sl2c")


@register_algebra("abelian_double")
def abelian_double(n: int = 2) -> DoubleLieAlgebra:
    return build_double(abelian(n, "a"), abelian(n, "a*"), name=f"R{2 * n}")


@register_algebra("chevalley")
def chevalley(rank: int = 1) -> DoubleLieAlgebra:
    if rank != 1:
        raise DomainError(
            "only the rank-1 Chevalley double is built in; supply structure constants for higher ranks"
        )
    return lu_weinstein()
