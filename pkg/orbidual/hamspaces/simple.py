"""T*G with left multiplication, and the pendulum chart of a generic se(2)* orbit."""

from __future__ import annotations

import math

import numpy as np

from orbidual.core.errors import DomainError
from orbidual.extension.cocycle import ExtendedDual, ZeroCocycle, coadjoint_matrix
from orbidual.groups.matrix import LieGroup, translation_project, translation_residual
from orbidual.hamspaces.base import HamiltonianSpace, PhasePoint, cotangent_omega
from orbidual.liecore.algebra import abelian
from orbidual.liecore.builtins import RigidBodyConstants


class CotangentGroup(HamiltonianSpace):
    """(k, (g, lam)) -> (k g, lam) with spatial momentum Ad*_{g^-1} lam."""

    kind = "cotangent_group"
    allowed_tags = frozenset({("canonical", "left", "spatial")})

    def __init__(self, group: LieGroup):
        super().__init__(
            group, group, group.algebra.dim, ZeroCocycle(group),
            symplectic="canonical", action="left", momentum="spatial",
        )

    def omega_matrix(self, point: PhasePoint) -> np.ndarray:
        return cotangent_omega(self.base_group.algebra.bracket_form(point.fiber))

    def act(self, l: np.ndarray, point: PhasePoint) -> PhasePoint:
        return PhasePoint(l @ point.base, point.fiber)

    def momentum(self, point: PhasePoint) -> ExtendedDual:
        return ExtendedDual(coadjoint_matrix(self.base_group, point.base) @ point.fiber, 1.0)

    def coordinate_labels(self) -> list[str]:
        return [f"lambda_{i + 1}" for i in range(self.fiber_dim)]


def circle_group() -> LieGroup:
    return LieGroup("S1", abelian(1, "s1"), np.array([[[0.0, 1.0], [0.0, 0.0]]]),
                    translation_residual, translation_project)


def wrap_angle(x: float | np.ndarray) -> float | np.ndarray:
    return (np.asarray(x) + math.pi) % (2.0 * math.pi) - math.pi


class OrbitChartSpace(HamiltonianSpace):
    """Coordinates (theta, p) on the orbit K(beta) = r^2 / 2 of se(2)* in the rigid-body basis.

    beta = (r k1 cos theta, r k2 sin theta, p); the form is k1 k2 dtheta ^ dp.
    """

    kind = "orbit_chart"
    allowed_tags = frozenset({("kk_scaled", "coadjoint", "inclusion")})

    def __init__(self, group: LieGroup, constants: RigidBodyConstants, casimir: float):
        if casimir <= 0:
            raise DomainError(f"orbit chart needs a positive Casimir value, got {casimir}")
        self.constants = constants
        self.radius = math.sqrt(2.0 * casimir)
        super().__init__(
            circle_group(), group, 1, ZeroCocycle(group),
            symplectic="kk_scaled", action="coadjoint", momentum="inclusion",
        )

    @property
    def kappa(self) -> float:
        return self.constants.k1 * self.constants.k2

    @staticmethod
    def angle(point: PhasePoint) -> float:
        return float(np.real(point.base[0, 1]))

    def chart_point(self, theta: float, p: float) -> PhasePoint:
        base = np.eye(2)
        base[0, 1] = theta
        return PhasePoint(base, np.array([p]))

    def to_beta(self, point: PhasePoint) -> np.ndarray:
        theta, k = self.angle(point), self.constants
        return np.array([self.radius * k.k1 * math.cos(theta), self.radius * k.k2 * math.sin(theta),
                         float(point.fiber[0])])

    def from_beta(self, beta: np.ndarray, near: float = 0.0) -> PhasePoint:
        k = self.constants
        raw = math.atan2(beta[1] / k.k2, beta[0] / k.k1)
        return self.chart_point(near + float(wrap_angle(raw - near)), float(beta[2]))

    def omega_matrix(self, point: PhasePoint) -> np.ndarray:
        return self.kappa * np.array([[0.0, 1.0], [-1.0, 0.0]])

    def act(self, l: np.ndarray, point: PhasePoint) -> PhasePoint:
        beta = coadjoint_matrix(self.acting_group, l) @ self.to_beta(point)
        return self.from_beta(beta, near=self.angle(point))

    def momentum(self, point: PhasePoint) -> ExtendedDual:
        return ExtendedDual(self.to_beta(point), 1.0)

    def distance(self, p: PhasePoint, q: PhasePoint) -> float:
        return float(abs(wrap_angle(self.angle(p) - self.angle(q))) + abs(p.fiber[0] - q.fiber[0]))

    def coordinates(self, point: PhasePoint) -> np.ndarray:
        return np.array([self.angle(point), float(point.fiber[0])])

    def coordinate_labels(self) -> list[str]:
        return ["theta", "p"]

    def pendulum_rhs(self, theta: float, p: float) -> tuple[float, float]:
        """Hamilton's equations for h = 1/2 (n2 beta_2^2 + beta_3^2) in the chart."""
        k = self.constants
        theta_dot = p / self.kappa
        p_dot = -k.n2 * self.radius ** 2 * k.k2 ** 2 * math.sin(theta) * math.cos(theta) / self.kappa
        return theta_dot, p_dot
