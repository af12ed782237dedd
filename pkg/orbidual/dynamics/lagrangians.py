"""Lagrangian families obtained by inverting the Legendre transform of collective Hamiltonians.

Each family maps ``(state, velocity)`` to a value; ``state`` is a group
matrix and ``velocity`` its body velocity ``state^-1 d(state)``.  The
``legendre`` and ``hamiltonian`` methods give the phase-space side so the
identity ``L = <fiber, velocity> - H`` can be checked pointwise.
"""

from __future__ import annotations

import logging
from typing import Any, Callable

import numpy as np

from orbidual.core.errors import ConfigurationError, DomainError, SingularBlockError
from orbidual.core.logs import note_once
from orbidual.dynamics.sigma import BLOCK_CONDITION_LIMIT, SigmaOperator, dual_sigma_blocks, sigma_blocks
from orbidual.extension.checks import alpha_as_dual
from orbidual.extension.cocycle import Cocycle, ZeroCocycle, as_shifted
from orbidual.groups.double import DoubleGroup

log = logging.getLogger("orbidual.dynamics")

COMPATIBILITY_TOL = 1e-8
OPERATOR_TOL = 1e-12

_FAMILIES: dict[str, type[LagrangianFamily]] = {}


def register_lagrangian(name: str) -> Callable[[type[LagrangianFamily]], type[LagrangianFamily]]:
    def decorator(cls: type[LagrangianFamily]) -> type[LagrangianFamily]:
        cls.name = name
        _FAMILIES[name] = cls
        return cls
    return decorator


def get_lagrangian(name: str, double: DoubleGroup, **params: Any) -> LagrangianFamily:
    if name not in _FAMILIES:
        raise ConfigurationError(f"unknown Lagrangian family {name!r} (available: {', '.join(list_lagrangians())})")
    return _FAMILIES[name](double, **params)


def list_lagrangians() -> list[str]:
    return sorted(_FAMILIES)


class LagrangianFamily:
    name = "lagrangian"

    def __init__(self, double: DoubleGroup, *, cocycle: Cocycle | None = None, alpha: np.ndarray | None = None):
        self.double = double
        self.cocycle = as_shifted(cocycle or ZeroCocycle(double.total))
        self.alpha = np.zeros(double.n) if alpha is None else np.asarray(alpha, dtype=float)
        self.alpha_dual = alpha_as_dual(self.alpha, double.algebra)

    def lagrangian(self, state: np.ndarray, velocity: np.ndarray) -> float:
        raise NotImplementedError

    def legendre(self, state: np.ndarray, velocity: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def hamiltonian(self, state: np.ndarray, fiber: np.ndarray) -> float:
        raise NotImplementedError

    def legendre_residual(self, state: np.ndarray, velocity: np.ndarray) -> float:
        velocity = np.asarray(velocity, dtype=float)
        fiber = self.legendre(state, velocity)
        return abs(self.lagrangian(state, velocity) - (float(fiber @ velocity) - self.hamiltonian(state, fiber)))

    def _inverse_cocycle(self, l: np.ndarray, keep: slice, what: str) -> np.ndarray:
        """psi-bar C(l^-1) restricted to one factor; the other must vanish."""
        z = self.double.algebra.from_dual(self.cocycle(np.linalg.inv(l)))
        n = self.double.n
        other = z[n:] if keep.start in (None, 0) else z[:n]
        if other.size and np.abs(other).max() > COMPATIBILITY_TOL:
            raise DomainError(f"{self.name}: cocycle is not compatible with {what} (leak {np.abs(other).max():.3e})")
        return z[keep]


class _SigmaFamily(LagrangianFamily):
    """Base for the N-side sigma families: c = psi-bar C(g^-1) restricted to n."""

    def __init__(self, double: DoubleGroup, *, operator: SigmaOperator, cocycle: Cocycle | None = None,
                 alpha: np.ndarray | None = None):
        super().__init__(double, cocycle=cocycle, alpha=alpha)
        self.operator = operator

    def _shift(self) -> np.ndarray:
        return self.alpha

    def _c(self, g: np.ndarray) -> np.ndarray:
        return self._inverse_cocycle(g, slice(0, self.double.n), "N")

    def lagrangian(self, state: np.ndarray, velocity: np.ndarray) -> float:
        v = np.asarray(velocity, dtype=float)
        blocks = sigma_blocks(self.double, self.operator, state)
        c = self._c(state)
        value = 0.5 * (v + c) @ (blocks.G + blocks.B) @ (v - c)
        return float(value - v @ self._shift())

    def legendre(self, state: np.ndarray, velocity: np.ndarray) -> np.ndarray:
        """lambda = G v - B c - alpha."""
        blocks = sigma_blocks(self.double, self.operator, state)
        return blocks.G @ np.asarray(velocity, dtype=float) - blocks.B @ self._c(state) - self._shift()

    def hamiltonian(self, state: np.ndarray, fiber: np.ndarray) -> float:
        blocks = sigma_blocks(self.double, self.operator, state)
        w = np.r_[-self._c(state), np.asarray(fiber, dtype=float) + self._shift()]
        return float(0.5 * w @ self.double.algebra.psi @ blocks.e_g @ w)


@register_lagrangian("Lsigma0")
class SigmaLagrangian(_SigmaFamily):
    """1/2 <(G + B)(v - c), v + c> on N, no shift."""

    def _shift(self) -> np.ndarray:
        return np.zeros(self.double.n)


@register_lagrangian("LsigmaAlpha")
class ShiftedSigmaLagrangian(_SigmaFamily):
    """The sigma Lagrangian minus <alpha, v>, from the alpha-shifted collective Hamiltonian."""


@register_lagrangian("LtildeAlpha")
class DualSigmaLagrangian(LagrangianFamily):
    """The same operator seen from N*: 1/2 <(G~ + B~)(v + alpha - c~), v - alpha + c~>."""

    def __init__(self, double: DoubleGroup, *, operator: SigmaOperator, cocycle: Cocycle | None = None,
                 alpha: np.ndarray | None = None):
        super().__init__(double, cocycle=cocycle, alpha=alpha)
        self.operator = operator

    def _q(self, h: np.ndarray) -> np.ndarray:
        n = self.double.n
        return self.alpha - self._inverse_cocycle(h, slice(n, 2 * n), "N*")

    def lagrangian(self, state: np.ndarray, velocity: np.ndarray) -> float:
        v = np.asarray(velocity, dtype=float)
        blocks = dual_sigma_blocks(self.double, self.operator, state)
        q = self._q(state)
        return float(0.5 * (v - q) @ (blocks.G + blocks.B) @ (v + q))

    def legendre(self, state: np.ndarray, velocity: np.ndarray) -> np.ndarray:
        blocks = dual_sigma_blocks(self.double, self.operator, state)
        return blocks.G @ np.asarray(velocity, dtype=float) + blocks.B @ self._q(state)

    def hamiltonian(self, state: np.ndarray, fiber: np.ndarray) -> float:
        blocks = dual_sigma_blocks(self.double, self.operator, state)
        w = np.r_[np.asarray(fiber, dtype=float), self._q(state)]
        return float(0.5 * w @ self.double.algebra.psi @ blocks.e_g @ w)


class WznwHamiltonian:
    """H(l, eta) = 1/2 (zeta, L3 zeta) + (zeta, L2 Phi) - 1/2 (Phi, L2 Phi), zeta = Ad*_{l^-1} eta.

    L2 and L3 act on dual coordinates and are self-adjoint for the induced
    pairing; Phi(l) is supplied by the family.
    """

    def __init__(self, pairing: np.ndarray, l2: np.ndarray, l3: np.ndarray):
        self.pairing = np.asarray(pairing, dtype=float)
        self.l2 = np.asarray(l2, dtype=float)
        self.l3 = np.asarray(l3, dtype=float)
        for name, m in (("L2", self.l2), ("L3", self.l3)):
            residual = float(np.abs(m.T @ self.pairing - self.pairing @ m).max())
            if residual > OPERATOR_TOL * max(1.0, float(np.abs(m).max())):
                raise DomainError(f"{name} is not self-adjoint (residual {residual:.3e})")
        self.condition = float(np.linalg.cond(self.l3))
        if not np.isfinite(self.condition) or self.condition > BLOCK_CONDITION_LIMIT:
            raise SingularBlockError(f"L3 is not invertible (cond {self.condition:.2e})")
        self.l3_inv = np.linalg.inv(self.l3)

    def dual_pair(self, a: np.ndarray, b: np.ndarray) -> float:
        return float(a @ self.pairing @ b)

    def value(self, zeta: np.ndarray, phi: np.ndarray) -> float:
        return (0.5 * self.dual_pair(zeta, self.l3 @ zeta) + self.dual_pair(zeta, self.l2 @ phi)
                - 0.5 * self.dual_pair(phi, self.l2 @ phi))


class _WznwFamily(LagrangianFamily):
    """Chiral Lagrangians <eta, l^-1 l'> - H on H x h*."""

    include_alpha = True

    def __init__(self, double: DoubleGroup, *, l2: np.ndarray, l3: np.ndarray, cocycle: Cocycle | None = None,
                 alpha: np.ndarray | None = None):
        super().__init__(double, cocycle=cocycle, alpha=alpha)
        self.hamiltonian_form = WznwHamiltonian(double.algebra.psi, l2, l3)
        self.shifted = self.cocycle.shifted(-self.alpha_dual)
        note_once(log, "wznw-inverse", "reading the barred L3 in the chiral Lagrangians as the inverse of L3")

    def phi(self, l: np.ndarray) -> np.ndarray:
        value = self.shifted(l)
        return value + self.alpha_dual if self.include_alpha else value

    def _ad(self, l: np.ndarray) -> np.ndarray:
        return self.double.total.adjoint_matrix(l)

    def hamiltonian(self, state: np.ndarray, fiber: np.ndarray) -> float:
        zeta = self._ad(np.linalg.inv(state)).T @ np.asarray(fiber, dtype=float)
        return self.hamiltonian_form.value(zeta, self.phi(state))

    def legendre(self, state: np.ndarray, velocity: np.ndarray) -> np.ndarray:
        """eta = Ad_l^T zeta with L3 zeta = psi(l' l^-1) - L2 Phi."""
        ad = self._ad(state)
        u = ad @ np.asarray(velocity, dtype=float)
        form = self.hamiltonian_form
        zeta = form.l3_inv @ (form.pairing @ u - form.l2 @ self.phi(state))
        return ad.T @ zeta

    def lagrangian(self, state: np.ndarray, velocity: np.ndarray) -> float:
        """1/2 <L3^-1 psi u, u> - <L3^-1 L2 Phi, u> + 1/2 (Phi, (L2 + L2 L3^-1 L2) Phi), u = l' l^-1."""
        form = self.hamiltonian_form
        u = self._ad(state) @ np.asarray(velocity, dtype=float)
        phi = self.phi(state)
        pu = form.pairing @ u
        return float(
            0.5 * (form.l3_inv @ pu) @ u
            - (form.l3_inv @ form.l2 @ phi) @ u
            + 0.5 * form.dual_pair(phi, (form.l2 + form.l2 @ form.l3_inv @ form.l2) @ phi)
        )


@register_lagrangian("Lc0")
class ChiralLagrangian(_WznwFamily):
    """Phi = C_{-alpha}(l) + alpha: the c_0 picture."""


@register_lagrangian("LcMinusAlpha")
class ShiftedChiralLagrangian(_WznwFamily):
    """Phi = C_{-alpha}(l): the c_{-alpha} picture."""

    include_alpha = False


def lagrangian_eval(family: str, double: DoubleGroup, state: np.ndarray, velocity: np.ndarray, **params: Any) -> float:
    return get_lagrangian(family, double, **params).lagrangian(state, velocity)
