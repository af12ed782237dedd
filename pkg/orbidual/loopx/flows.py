"""Chiral loop-group flow d/dt l l^-1 = E(l' l^-1 + Ad_l alpha) and the enlarged LG* x Lg x T*t flow.

Paths are advanced sample by sample with batched RKMK4; the s-derivative is
spectral. Conserved quantities are tracked through the eigenvalues of the
holonomy of the current momentum loop.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_trapezoid
from tqdm import tqdm

from orbidual.core.errors import BlowUpError, ConditionError, DimensionError, DomainError
from orbidual.core.logs import note_once
from orbidual.dynamics.flows import BLOW_UP_LIMIT, RENORMALIZE_TOL, time_grid
from orbidual.dynamics.integrators import rkmk4_step
from orbidual.dynamics.sigma import SigmaOperator, conjugated
from orbidual.extension.checks import condition_subspace, require_alpha_condition
from orbidual.groups.double import NSTAR_FIRST, DoubleGroup
from orbidual.loopx.fourier import ALIASING_TOL, FourierLoop, spectral_derivative, spectral_tail
from orbidual.loopx.lagrangian import body_log_derivative, monodromic_lagrangian
from orbidual.loopx.paths import DEFAULT_BAND, LoopGroupPath, eigenvalue_drift, holonomy, loop_alpha_condition

log = logging.getLogger("orbidual.loopx")

COMPATIBILITY_TOL = 1e-8
CHECKPOINTS = 10
FD_STEP = 1e-6


@dataclass
class LoopTrajectory:
    times: np.ndarray
    paths: list[LoopGroupPath]
    momenta: list[np.ndarray] = field(repr=False)
    holonomies: dict[int, np.ndarray] = field(default_factory=dict, repr=False)
    tail_energy: float = 0.0

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> LoopGroupPath:
        return self.paths[-1]

    @property
    def eigen_drift(self) -> float:
        if not self.holonomies:
            return 0.0
        first = self.holonomies[min(self.holonomies)]
        return max(eigenvalue_drift(first, m) for m in self.holonomies.values())


def _alpha_samples(double: DoubleGroup, alpha: np.ndarray | FourierLoop, P: int) -> np.ndarray:
    """alpha as (P, dim h) samples in the n* block."""
    alg = double.algebra
    if isinstance(alpha, FourierLoop):
        if alpha.algebra.dim != alg.n:
            raise DimensionError(f"alpha loop has {alpha.algebra.dim} coordinates, n* has {alg.n}")
        if alpha.band > 0:
            report = loop_alpha_condition(alpha, alg, P)
            if not report.ok:
                raise ConditionError(
                    f"ad_alpha(s) X leaves g at s={report.witness.get('s', 0.0):.4g}", residual=report.worst_residual
                )
        values = alpha.samples(P)
    else:
        values = np.broadcast_to(np.asarray(alpha, dtype=float), (P, alg.n))
    return np.stack([alg.from_nstar(v) for v in values])


def loop_momentum(double: DoubleGroup, samples: np.ndarray, xi0: np.ndarray) -> np.ndarray:
    """l' l^-1 + Ad_l xi0 per sample, in h coordinates."""
    total = double.total
    inv = np.linalg.inv(samples)
    return total.pullback(spectral_derivative(samples) @ inv + samples @ total.embed(xi0) @ inv)


def loop_collective_flow(
    op: SigmaOperator | None,
    double: DoubleGroup,
    xi0: np.ndarray,
    l0: LoopGroupPath,
    T: float,
    dt: float,
    *,
    band: int = DEFAULT_BAND,
    checkpoints: int = CHECKPOINTS,
    progress: bool = False,
) -> LoopTrajectory:
    """Integrate d/dt l l^-1 = E(l' l^-1 + Ad_l xi0) from a closed l0; ``op=None`` is the zero Hamiltonian."""
    if not l0.closed:
        raise DomainError("the chiral flow starts from a closed path")
    xi0 = np.asarray(xi0, dtype=float)
    if xi0.shape != (l0.P, double.algebra.dim):
        raise DimensionError(f"xi0 must have shape ({l0.P}, {double.algebra.dim}), got {xi0.shape}")
    total = double.total
    e = None if op is None else op.matrix

    def velocity(_c: float, y: np.ndarray) -> np.ndarray:
        if e is None:
            return np.zeros_like(y)
        return total.embed(loop_momentum(double, y, xi0) @ e.T)

    times, h = time_grid(T, dt)
    marks = set(np.linspace(0, len(times) - 1, min(checkpoints, len(times))).round().astype(int).tolist())
    y = np.array(l0.samples, dtype=complex if np.iscomplexobj(l0.samples) or np.iscomplexobj(total.basis) else float)
    paths, momenta, holonomies = [l0], [loop_momentum(double, y, xi0)], {}
    tail = spectral_tail(momenta[0], band)
    if 0 in marks:
        holonomies[0] = holonomy(momenta[0], total)
    warned = False
    with tqdm(total=len(times) - 1, desc="chiral flow", disable=not progress, leave=False, unit="step") as bar:
        for i in range(1, len(times)):
            y = rkmk4_step(y, velocity, h)
            if not np.all(np.isfinite(y)) or np.abs(y).max() > BLOW_UP_LIMIT:
                raise BlowUpError(f"chiral flow blew up at t={times[i]:.6g}", time=float(times[i]))
            if i in marks:
                y = np.stack([total.renormalize(g, tol=RENORMALIZE_TOL, context="chiral flow") for g in y])
            mom = loop_momentum(double, y, xi0)
            tail_i = spectral_tail(mom, band)
            tail = max(tail, tail_i)
            if tail_i > ALIASING_TOL and not warned:
                log.warning("spectral tail energy %.2e above band %d at t=%.4g", tail_i, band, times[i])
                warned = True
            if i in marks:
                holonomies[i] = holonomy(mom, total)
            paths.append(LoopGroupPath(l0.group, y))
            momenta.append(mom)
            bar.update(1)
    return LoopTrajectory(times, paths, momenta, holonomies, tail)


def wznw_flow(
    op: SigmaOperator,
    double: DoubleGroup,
    l0: LoopGroupPath,
    alpha: np.ndarray | FourierLoop,
    T: float,
    dt: float,
    **kwargs,
) -> LoopTrajectory:
    """d/dt l l^-1 = E(l' l^-1 + Ad_l alpha); alpha lives in n* (constant or a loop)."""
    return loop_collective_flow(op, double, _alpha_samples(double, alpha, l0.P), l0, T, dt, **kwargs)


# -- enlarged phase space -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EnlargedState:
    """(g~, Z, alpha, lambda): g~ a closed LG* path, Z an Lg loop as (P, n) samples, alpha in t, lambda in t*."""

    gtilde: LoopGroupPath
    Z: np.ndarray
    alpha: np.ndarray
    lam: np.ndarray

    def __post_init__(self) -> None:
        z = np.asarray(self.Z, dtype=float)
        if z.shape[0] != self.gtilde.P:
            raise DimensionError(f"Z has {z.shape[0]} samples, g~ has {self.gtilde.P}")
        object.__setattr__(self, "Z", z)
        object.__setattr__(self, "alpha", np.asarray(self.alpha, dtype=float))
        object.__setattr__(self, "lam", np.atleast_1d(np.asarray(self.lam, dtype=float)))


def enlarged_momentum(double: DoubleGroup, state: EnlargedState) -> np.ndarray:
    """g~' g~^-1 + Ad_g~ (Z + alpha) per sample."""
    alg = double.algebra
    total = double.total
    twist = total.pullback(state.gtilde.right_log_derivative())
    return np.stack([
        t + total.adjoint_matrix(g) @ (alg.from_n(z) + alg.from_nstar(state.alpha))
        for g, z, t in zip(state.gtilde.samples, state.Z, twist)
    ])


def loop_action(double: DoubleGroup, l: np.ndarray, state: EnlargedState) -> tuple[LoopGroupPath, np.ndarray]:
    """Pointwise l . (g~, Z): l = b~ a, a g~ = g~^a a^g~, then (b~ g~^a, Ad_{a^g~}(Z + alpha) + (a^g~)' (a^g~)^-1 - alpha)."""
    alg = double.algebra
    total = double.total
    n = alg.n
    heads, tails = [], []
    for lj, gj in zip(l, state.gtilde.samples):
        outer = double.factorize(lj, NSTAR_FIRST)
        inner = double.factorize(outer.g @ gj, NSTAR_FIRST)
        heads.append(outer.htilde @ inner.htilde)
        tails.append(inner.g)
    tails = np.array(tails)
    drift = total.pullback(spectral_derivative(tails) @ np.linalg.inv(tails))
    shifted = alg.from_nstar(state.alpha)
    w = np.stack([
        total.adjoint_matrix(a) @ (alg.from_n(z) + shifted) + d - shifted
        for a, z, d in zip(tails, state.Z, drift)
    ])
    leak = float(np.abs(w[:, n:]).max(initial=0.0))
    if leak > COMPATIBILITY_TOL:
        raise DomainError(f"transformed Z leaves g (n* leak {leak:.3e}); alpha must satisfy the condition")
    return LoopGroupPath(state.gtilde.group, np.array(heads)), w[:, :n]


def dual_velocity(double: DoubleGroup, op: SigmaOperator, state: EnlargedState) -> np.ndarray:
    """g~^-1 dg~/dt = Pi_n* E_g~ (Z, alpha + g~^-1 g~') per sample."""
    n = double.n
    q = state.alpha + body_log_derivative(double, state.gtilde)
    return np.stack([
        (conjugated(double, op, g) @ np.r_[z, qj])[n:]
        for g, z, qj in zip(state.gtilde.samples, state.Z, q)
    ])


def alpha_gradient(
    double: DoubleGroup, op: SigmaOperator, gtilde: LoopGroupPath, velocity: np.ndarray, alpha: np.ndarray,
    basis: np.ndarray, step: float = FD_STEP,
) -> np.ndarray:
    """Central differences of the monodromic Lagrangian along the columns of *basis*."""
    out = []
    for col in basis.T:
        plus = monodromic_lagrangian(double, op, gtilde, velocity, alpha + step * col)
        minus = monodromic_lagrangian(double, op, gtilde, velocity, alpha - step * col)
        out.append((plus - minus) / (2.0 * step))
    return np.array(out)


@dataclass
class EnlargedTrajectory:
    times: np.ndarray
    states: list[EnlargedState]
    flow: LoopTrajectory = field(repr=False)
    rates: np.ndarray = field(repr=False)
    momentum_residual: float = 0.0

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> EnlargedState:
        return self.states[-1]

    @property
    def alpha_drift(self) -> float:
        first = self.states[0].alpha
        return max(float(np.abs(s.alpha - first).max(initial=0.0)) for s in self.states)

    @property
    def eigen_drift(self) -> float:
        return self.flow.eigen_drift


def enlarged_flow(
    op: SigmaOperator | None,
    double: DoubleGroup,
    state: EnlargedState,
    T: float,
    dt: float,
    *,
    band: int = DEFAULT_BAND,
    checkpoints: int = CHECKPOINTS,
    progress: bool = False,
) -> EnlargedTrajectory:
    """Collective motion on LG* x Lg x T*t driven by h = 1/2 (mu~, E mu~).

    alpha is carried unchanged; lambda integrates the alpha-gradient of the
    monodromic Lagrangian with the trapezoid rule.
    """
    require_alpha_condition(state.alpha, double.algebra)
    basis = condition_subspace(double.algebra)
    if state.lam.shape != (basis.shape[1],):
        raise DimensionError(f"lambda needs {basis.shape[1]} coordinates, got {state.lam.shape}")
    note_once(log, "enlarged-flow", "enlarged flow: alpha is frozen, lambda follows the alpha-gradient of L_alpha")

    mu0 = enlarged_momentum(double, state)
    start = LoopGroupPath.constant(double.total, state.gtilde.P)
    flow = loop_collective_flow(op, double, mu0, start, T, dt, band=band, checkpoints=checkpoints, progress=progress)

    states, rates, residual = [], [], 0.0
    for path, mom in zip(flow.paths, flow.momenta):
        gtilde, z = loop_action(double, path.samples, state)
        current = EnlargedState(gtilde, z, state.alpha, state.lam)
        residual = max(residual, float(np.abs(enlarged_momentum(double, current) - mom).max()))
        if op is None:
            rates.append(np.zeros(basis.shape[1]))
        else:
            v = dual_velocity(double, op, current)
            rates.append(alpha_gradient(double, op, gtilde, v, state.alpha, basis))
        states.append(current)
    rates_arr = np.array(rates)
    lam = state.lam + cumulative_trapezoid(rates_arr, flow.times, axis=0, initial=0.0)
    states = [EnlargedState(s.gtilde, s.Z, state.alpha, l) for s, l in zip(states, lam)]
    log.debug("enlarged flow: momentum residual %.3e, eigen drift %.3e", residual, flow.eigen_drift)
    return EnlargedTrajectory(flow.times, states, flow, rates_arr, residual)
