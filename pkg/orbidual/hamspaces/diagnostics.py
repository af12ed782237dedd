"""Residuals certifying Hamiltonian H-spaces: equivariance, Poisson property, dualizability."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import least_squares

from orbidual.extension.cocycle import ExtendedDual, extended_coadjoint
from orbidual.extension.poisson import FD_STEP, Observable, lie_poisson_bracket, orbit_generator_matrix
from orbidual.hamspaces.base import HamiltonianSpace, PhasePoint

log = logging.getLogger("orbidual.hamspaces")

DUALIZABLE_TOL = 1e-6
STABILIZER_RCOND = 1e-10


def equivariance_residual(space: HamiltonianSpace, l: np.ndarray, point: PhasePoint) -> float:
    """|mu(l . p) - Ad-hat*_{l^-1} mu(p)|."""
    lhs = space.momentum(space.act(l, point))
    rhs = extended_coadjoint(space.target, l, space.momentum(point))
    return float(np.abs(lhs.xi - rhs.xi).max())


def action_law_residual(space: HamiltonianSpace, l1: np.ndarray, l2: np.ndarray, point: PhasePoint) -> float:
    composed = space.act(l1 @ l2, point)
    stepwise = space.act(l1, space.act(l2, point))
    return space.distance(composed, stepwise)


def poisson_map_residual(
    space: HamiltonianSpace,
    point: PhasePoint,
    f: Observable,
    g: Observable,
    step: float = FD_STEP,
) -> float:
    """|{f o mu, g o mu}_space - polarity {f, g}_target o mu|."""
    lhs = space.bracket(point, lambda p: f(space.momentum(p).xi), lambda p: g(space.momentum(p).xi), step)
    rhs = lie_poisson_bracket(space.target, f, g, space.momentum(point))
    return abs(lhs - space.polarity * rhs)


def momentum_map_residual(space: HamiltonianSpace, point: PhasePoint, z: np.ndarray) -> float:
    """|X_{<mu, Z>} - polarity V_Z| modulo the kernel of omega."""
    z = np.asarray(z, dtype=float)
    dh = space.differential(lambda p: float(space.momentum(p).xi @ z), point)
    generator = space.generator(point, z)
    omega = space.omega_matrix(point)
    return float(np.abs(omega.T @ (space.polarity * generator) - dh).max())


@dataclass(frozen=True)
class DualizableReport:
    residual: float
    converged: bool
    inconclusive: bool
    witness: np.ndarray | None = field(default=None, repr=False)

    @property
    def member(self) -> bool:
        return self.residual < DUALIZABLE_TOL

    def to_dict(self) -> dict[str, Any]:
        return {"residual": self.residual, "converged": self.converged, "inconclusive": self.inconclusive,
                "member": self.member}


def dualizable_residual(
    space: HamiltonianSpace,
    point: PhasePoint,
    anchor: ExtendedDual,
    *,
    hint: np.ndarray | None = None,
    max_nfev: int = 200,
) -> DualizableReport:
    """Distance from mu(point) to the orbit of *anchor*, minimized over l = exp(Z) l0."""
    group = space.acting_group
    target = space.momentum(point).xi

    def residuals(z: np.ndarray, l0: np.ndarray) -> np.ndarray:
        return extended_coadjoint(space.target, group.exp(z) @ l0, anchor).xi - target

    starts = [group.identity]
    if hint is not None:
        starts.append(np.asarray(hint))
    best: DualizableReport | None = None
    for l0 in starts:
        result = least_squares(residuals, np.zeros(group.algebra.dim), args=(l0,), method="lm",
                               max_nfev=max_nfev * group.algebra.dim, xtol=1e-14, ftol=1e-14)
        residual = float(np.abs(residuals(result.x, l0)).max())
        report = DualizableReport(residual, bool(result.success), False, group.exp(result.x) @ l0)
        if best is None or report.residual < best.residual:
            best = report
        if report.member:
            break
    assert best is not None
    if not best.member and not best.converged:
        log.info("%s: orbit distance minimization did not converge (residual %.3e)", space.kind, best.residual)
        best = DualizableReport(best.residual, False, True, best.witness)
    return best


def stabilizer_basis(space: HamiltonianSpace, anchor: ExtendedDual) -> np.ndarray:
    """Columns span {Z : infinitesimal extended coadjoint action of Z fixes the anchor}."""
    return null_space(orbit_generator_matrix(space.target, anchor), rcond=STABILIZER_RCOND)


def null_direction_residual(
    space: HamiltonianSpace,
    point: PhasePoint,
    anchor: ExtendedDual,
    witness: np.ndarray,
) -> float:
    """max |omega(V_W, V_Y)| over stabilizer directions W = Ad_l Z0 and basis Y.

    *witness* is an l with mu(point) = Ad-hat*_{l^-1} anchor.
    """
    stab = stabilizer_basis(space, anchor)
    if stab.size == 0:
        return 0.0
    ad = space.acting_group.adjoint_matrix(witness)
    omega = space.omega_matrix(point)
    ys = [space.generator(point, e) for e in np.eye(space.acting_group.algebra.dim)]
    worst = 0.0
    for z0 in stab.T:
        v = space.generator(point, ad @ z0)
        worst = max(worst, max(abs(float(v @ omega @ y)) for y in ys))
    return worst


def closedness_residual(
    space: HamiltonianSpace,
    point: PhasePoint,
    t1: np.ndarray,
    t2: np.ndarray,
    t3: np.ndarray,
    step: float = 1e-5,
) -> float:
    """d omega on constant body extensions, with [X, Y] = ([A_X, A_Y], 0)."""
    alg = space.base_group.algebra
    nb = space.base_dim

    def lie(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.r_[alg.bracket_coords(a[:nb], b[:nb]), np.zeros(space.fiber_dim)]

    def derivative(x: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
        plus = space.symplectic_eval(space.retract(point, step * x), a, b)
        minus = space.symplectic_eval(space.retract(point, -step * x), a, b)
        return (plus - minus) / (2.0 * step)

    w = space.symplectic_eval
    value = (
        derivative(t1, t2, t3) - derivative(t2, t1, t3) + derivative(t3, t1, t2)
        - w(point, lie(t1, t2), t3) + w(point, lie(t1, t3), t2) - w(point, lie(t2, t3), t1)
    )
    return abs(value)
