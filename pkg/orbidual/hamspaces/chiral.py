"""The chiral space H x h* and the reduced orbit space carried by H."""

from __future__ import annotations

import logging

import numpy as np

from orbidual.core.logs import note_once
from orbidual.extension.checks import alpha_as_dual
from orbidual.extension.cocycle import Cocycle, ExtendedDual, ZeroCocycle, as_shifted
from orbidual.groups.double import DoubleGroup
from orbidual.groups.matrix import LieGroup
from orbidual.hamspaces.base import HamiltonianSpace, PhasePoint

log = logging.getLogger("orbidual.hamspaces")


class ChiralSpace(HamiltonianSpace):
    """H x h* with the extended form and the right action (l, eta) -> (l k^-1, Ad*_{k^-1} eta).

    The momentum map J^R(l, eta) = eta - Ad*_l C_theta(l) is anti-Poisson.
    """

    kind = "chiral_H"
    polarity = -1
    allowed_tags = frozenset({("extended", "right_invariant", "JhatR")})

    def __init__(self, group: LieGroup, cocycle: Cocycle | None = None):
        cocycle = as_shifted(cocycle or ZeroCocycle(group))
        super().__init__(
            group, group, group.algebra.dim, cocycle,
            symplectic="extended", action="right_invariant", momentum="JhatR",
        )
        self.cocycle = cocycle
        note_once(log, "chiral-cocycle", "chiral space: shifted cocycle and adjoint maps both taken on H")

    def omega_matrix(self, point: PhasePoint) -> np.ndarray:
        """[[B_eta - M^T chat^T M, I], [-I, 0]] with M = Ad_l."""
        d = self.fiber_dim
        m = self.base_group.adjoint_matrix(point.base)
        top = self.base_group.algebra.bracket_form(point.fiber) - m.T @ self.cocycle.form_matrix() @ m
        return np.block([[top, np.eye(d)], [-np.eye(d), np.zeros((d, d))]])

    def act(self, l: np.ndarray, point: PhasePoint) -> PhasePoint:
        l_inv = np.linalg.inv(l)
        return PhasePoint(point.base @ l_inv, self.base_group.adjoint_matrix(l_inv).T @ point.fiber)

    def momentum(self, point: PhasePoint) -> ExtendedDual:
        ad_l = self.base_group.adjoint_matrix(point.base)
        return ExtendedDual(point.fiber - ad_l.T @ self.cocycle(point.base), 1.0)

    def equations_of_motion(self, point: PhasePoint, dh: np.ndarray) -> np.ndarray:
        """Closed form: l^-1 l' = dH_fiber, eta' = ad*_{dH_fiber}(eta - C(l^-1)) - chat dH_fiber - dH_base."""
        d = self.fiber_dim
        base_grad, fiber_grad = dh[:d], dh[d:]
        alg = self.base_group.algebra
        c_inv = self.cocycle(np.linalg.inv(point.base))
        eta_dot = alg.ad_star_coords(fiber_grad, point.fiber - c_inv) - self.cocycle.chat @ fiber_grad - base_grad
        return np.r_[fiber_grad, eta_dot]

    def coordinate_labels(self) -> list[str]:
        return [f"eta_{i + 1}" for i in range(self.fiber_dim)]


class ReducedOrbitSpace(HamiltonianSpace):
    """H with the presymplectic form c_{-alpha}(l^-1 v, l^-1 w) and left multiplication.

    ``Phi_c0`` lands on the orbit of (alpha, 1) in the c_0 picture,
    ``Phi_cminusalpha`` on the orbit of (0, 1) for c_{-alpha}.
    """

    kind = "reduced_orbit"
    degenerate = True
    allowed_tags = frozenset({
        ("presymplectic", "left", "Phi_c0"),
        ("presymplectic", "left", "Phi_cminusalpha"),
    })

    def __init__(
        self,
        double: DoubleGroup,
        *,
        alpha: np.ndarray | None = None,
        cocycle: Cocycle | None = None,
        momentum: str = "Phi_c0",
    ):
        self.double = double
        self.alpha = np.zeros(double.n) if alpha is None else np.asarray(alpha, dtype=float)
        self.alpha_dual = alpha_as_dual(self.alpha, double.algebra)
        base = as_shifted(cocycle or ZeroCocycle(double.total))
        self.shifted = base.shifted(-self.alpha_dual)
        target = base if momentum == "Phi_c0" else self.shifted
        super().__init__(
            double.total, double.total, 0, target,
            symplectic="presymplectic", action="left", momentum=momentum,
        )

    def omega_matrix(self, point: PhasePoint) -> np.ndarray:
        return self.shifted.form_matrix()

    def act(self, l: np.ndarray, point: PhasePoint) -> PhasePoint:
        return PhasePoint(l @ point.base, point.fiber)

    def momentum(self, point: PhasePoint) -> ExtendedDual:
        xi = self.shifted(point.base)
        if self.momentum_tag == "Phi_c0":
            xi = xi + self.alpha_dual
        return ExtendedDual(xi, 1.0)

    def orbit_anchor(self) -> ExtendedDual:
        if self.momentum_tag == "Phi_c0":
            return ExtendedDual(self.alpha_dual, 1.0)
        return ExtendedDual(np.zeros(self.double.algebra.dim), 1.0)
