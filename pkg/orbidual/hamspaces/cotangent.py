"""Cotangent phase spaces of the double's factors: T*N = N x n* and T*N* = N* x n."""

from __future__ import annotations

import logging

import numpy as np

from orbidual.core.errors import ConditionError
from orbidual.core.logs import note_once
from orbidual.extension.checks import alpha_as_dual, require_alpha_condition
from orbidual.extension.cocycle import Cocycle, ExtendedDual, ZeroCocycle, as_shifted, extended_coadjoint
from orbidual.groups.double import N_FIRST, NSTAR_FIRST, DoubleGroup
from orbidual.hamspaces.base import HamiltonianSpace, PhasePoint, cotangent_omega

log = logging.getLogger("orbidual.hamspaces")

CANONICAL = "canonical"
ALPHA_SHIFTED = "alpha_shifted"

LEAK_TOL = 1e-8


class CotangentN(HamiltonianSpace):
    """N x n* with the dressing-twisted H-action d-hat.

    Tag sets: canonical/dhat0/mu00, canonical/dhatAlpha/mu0alpha (needs the
    alpha condition) and alpha_shifted/dhatAlpha/mualphaalpha.
    """

    kind = "cotangent_N"
    allowed_tags = frozenset({
        (CANONICAL, "dhat0", "mu00"),
        (CANONICAL, "dhatAlpha", "mu0alpha"),
        (ALPHA_SHIFTED, "dhatAlpha", "mualphaalpha"),
    })

    def __init__(
        self,
        double: DoubleGroup,
        *,
        cocycle: Cocycle | None = None,
        alpha: np.ndarray | None = None,
        symplectic: str = CANONICAL,
        action: str = "dhat0",
        momentum: str = "mu00",
        enforce_condition: bool = True,
    ):
        self.double = double
        self.alpha = np.zeros(double.n) if alpha is None else np.asarray(alpha, dtype=float)
        self.alpha_dual = alpha_as_dual(self.alpha, double.algebra)
        base = cocycle or ZeroCocycle(double.total)
        shifted = action == "dhatAlpha"
        self.cocycle = base.shifted(-self.alpha_dual) if shifted else as_shifted(base)
        super().__init__(
            double.n_group, double.total, double.n, self.cocycle,
            symplectic=symplectic, action=action, momentum=momentum,
        )
        if symplectic == CANONICAL and shifted and enforce_condition:
            require_alpha_condition(self.alpha, double.algebra)
        if momentum == "mu00":
            note_once(log, "mu00-form", "T*N momentum read as the extended coadjoint image of (psi lambda, 1) under g")

    def omega_matrix(self, point: PhasePoint) -> np.ndarray:
        eta = point.fiber + (self.alpha if self.symplectic == ALPHA_SHIFTED else 0.0)
        return cotangent_omega(self.double.algebra.n_algebra.bracket_form(eta))

    def _dual_fiber(self, fiber: np.ndarray) -> ExtendedDual:
        alg = self.double.algebra
        return ExtendedDual(alg.to_dual(alg.from_nstar(fiber)), 1.0)

    def act(self, l: np.ndarray, point: PhasePoint) -> PhasePoint:
        """(a b~, (g, lam)) -> (a g^{b~}, Ad*_{(b~^g)^-1} lam + C(b~^g))."""
        outer = self.double.factorize(l, N_FIRST)
        inner = self.double.factorize(outer.htilde @ point.base, N_FIRST)
        moved = extended_coadjoint(self.cocycle, inner.htilde, self._dual_fiber(point.fiber))
        z = self.double.algebra.from_dual(moved.xi)
        return PhasePoint(outer.g @ inner.g, z[self.double.n:])

    def momentum(self, point: PhasePoint) -> ExtendedDual:
        return extended_coadjoint(self.cocycle, point.base, self._dual_fiber(point.fiber))

    def orbit_anchor(self) -> ExtendedDual:
        """(alpha, 1) for mu00, (0, 1) for the shifted formulations."""
        if self.action_tag == "dhat0":
            return ExtendedDual(self.alpha_dual, 1.0)
        return ExtendedDual(np.zeros(self.double.algebra.dim), 1.0)

    def coordinate_labels(self) -> list[str]:
        return [f"lambda_{i + 1}" for i in range(self.fiber_dim)]


class CotangentNstar(HamiltonianSpace):
    """N* x n with the action b-hat; momentum mu~phi (into c_0) or mu~alpha (into c_-alpha)."""

    kind = "cotangent_Nstar"
    allowed_tags = frozenset({
        (CANONICAL, "bhat", "mutildephi"),
        (CANONICAL, "bhat", "mutildealpha"),
    })

    def __init__(
        self,
        double: DoubleGroup,
        *,
        cocycle: Cocycle | None = None,
        alpha: np.ndarray | None = None,
        symplectic: str = CANONICAL,
        action: str = "bhat",
        momentum: str = "mutildephi",
        enforce_condition: bool = True,
    ):
        self.double = double
        self.alpha = np.zeros(double.n) if alpha is None else np.asarray(alpha, dtype=float)
        self.alpha_dual = alpha_as_dual(self.alpha, double.algebra)
        self.enforce_condition = enforce_condition
        self.base_cocycle = as_shifted(cocycle or ZeroCocycle(double.total))
        target = self.base_cocycle if momentum == "mutildephi" else self.base_cocycle.shifted(-self.alpha_dual)
        super().__init__(
            double.nstar_group, double.total, double.n, target,
            symplectic=symplectic, action=action, momentum=momentum,
        )
        if enforce_condition:
            require_alpha_condition(self.alpha, double.algebra)

    def omega_matrix(self, point: PhasePoint) -> np.ndarray:
        return cotangent_omega(self.double.algebra.nstar_algebra.bracket_form(point.fiber))

    def _shifted_fiber(self, fiber: np.ndarray) -> np.ndarray:
        """(X, alpha) in h coordinates."""
        return np.r_[fiber, self.alpha]

    def act(self, l: np.ndarray, point: PhasePoint) -> PhasePoint:
        """(b~ a, (h~, X)) -> (b~ h~_a, Ad_{a_h~}(X + alpha) - alpha + C(a_h~))."""
        alg = self.double.algebra
        n = self.double.n
        outer = self.double.factorize(l, NSTAR_FIRST)
        inner = self.double.factorize(outer.g @ point.base, NSTAR_FIRST)
        moved = extended_coadjoint(
            self.base_cocycle, inner.g, ExtendedDual(alg.to_dual(self._shifted_fiber(point.fiber)), 1.0)
        )
        z = alg.from_dual(moved.xi) - alg.from_nstar(self.alpha)
        leak = float(np.abs(z[n:]).max())
        if leak > LEAK_TOL:
            if self.enforce_condition:
                raise ConditionError(f"b-hat fiber left n (n* component {leak:.3e})", residual=leak)
            log.debug("b-hat fiber n* leak %.3e dropped", leak)
        return PhasePoint(outer.htilde @ inner.htilde, z[:n])

    def momentum(self, point: PhasePoint) -> ExtendedDual:
        alg = self.double.algebra
        out = extended_coadjoint(
            self.base_cocycle, point.base, ExtendedDual(alg.to_dual(self._shifted_fiber(point.fiber)), 1.0)
        )
        if self.momentum_tag == "mutildealpha":
            return ExtendedDual(out.xi - self.alpha_dual, 1.0)
        return out

    def orbit_anchor(self) -> ExtendedDual:
        if self.momentum_tag == "mutildephi":
            return ExtendedDual(self.alpha_dual, 1.0)
        return ExtendedDual(np.zeros(self.double.algebra.dim), 1.0)

    def coordinate_labels(self) -> list[str]:
        return [f"X_{i + 1}" for i in range(self.fiber_dim)]
