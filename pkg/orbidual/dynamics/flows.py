"""Collective flows: Lie-Poisson motion of the momentum, the reconstructed group
curve, p(t) = g(t) . p0, and the direct Hamiltonian integration used as oracle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np
from tqdm import tqdm

from orbidual.core.errors import BlowUpError, DomainError
from orbidual.extension.cocycle import Cocycle, ExtendedDual
from orbidual.extension.poisson import FD_STEP, hamiltonian_flow
from orbidual.groups.matrix import LieGroup
from orbidual.hamspaces.base import HamiltonianSpace, PhasePoint
from orbidual.dynamics.hamiltonians import CollectiveHamiltonian
from orbidual.dynamics.integrators import dexpinv, hermite_midpoint, rk4_step, rkmk4_step

log = logging.getLogger("orbidual.dynamics")

BLOW_UP_LIMIT = 1e12
RENORMALIZE_TOL = 1e-6

SpaceFunction = Callable[[PhasePoint], float]


@dataclass
class Trajectory:
    """Uniformly sampled states; ``group_curve[0]`` is the identity when present."""

    times: np.ndarray
    states: list[Any]
    group_curve: list[np.ndarray] | None = None
    rates: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if len(self.states) != len(self.times):
            raise DomainError(f"trajectory has {len(self.times)} times but {len(self.states)} states")
        if self.group_curve is not None and len(self.group_curve) != len(self.times):
            raise DomainError("group curve length differs from the time grid")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> Any:
        return self.states[-1]

    def values(self) -> np.ndarray:
        """Dual coordinates of an ExtendedDual trajectory as a (steps, dim) array."""
        return np.array([s.xi for s in self.states])


def time_grid(T: float, dt: float) -> tuple[np.ndarray, float]:
    if dt <= 0:
        raise DomainError(f"dt must be positive, got {dt}")
    if T < 0:
        raise DomainError(f"horizon must be non-negative, got {T}")
    steps = max(1, int(round(T / dt))) if T > 0 else 0
    h = T / steps if steps else dt
    return np.linspace(0.0, T, steps + 1), h


def _check_finite(y: np.ndarray, t: float, what: str) -> None:
    if not np.all(np.isfinite(y)) or np.abs(y).max(initial=0.0) > BLOW_UP_LIMIT:
        raise BlowUpError(f"{what} blew up at t={t:.6g}", time=t)


def _progress(total: int, desc: str, show: bool):
    return tqdm(total=total, desc=desc, disable=not show, leave=False, unit="step")


def lie_poisson_flow(
    h: CollectiveHamiltonian,
    cocycle: Cocycle,
    xi0: ExtendedDual,
    T: float,
    dt: float,
    *,
    scale: float = 1.0,
    progress: bool = False,
) -> Trajectory:
    """RK4 for xi' = scale * (-ad*_{dh} xi - b chat dh) on the b slice of xi0."""
    times, step = time_grid(T, dt)
    b = xi0.b

    def rhs(_t: float, xi: np.ndarray) -> np.ndarray:
        return scale * hamiltonian_flow(cocycle, h.gradient(xi), ExtendedDual(xi, b))

    xi = np.array(xi0.xi, dtype=float)
    states = [ExtendedDual(xi, b)]
    rates = []
    with _progress(len(times) - 1, "lie-poisson", progress) as bar:
        for t in times[:-1]:
            xi, rate = rk4_step(rhs, float(t), xi, step)
            _check_finite(xi, float(t + step), "Lie-Poisson flow")
            states.append(ExtendedDual(xi, b))
            rates.append(rate)
            bar.update()
    rates.append(rhs(float(times[-1]), xi))
    return Trajectory(times, states, rates=np.array(rates))


def reconstruct_group_curve(
    h: CollectiveHamiltonian,
    xi_traj: Trajectory,
    group: LieGroup,
    *,
    scale: float = 1.0,
    renormalize_tol: float = RENORMALIZE_TOL,
) -> Trajectory:
    """Solve g' g^-1 = scale * dh(xi(t)), g(0) = e, by RKMK4 on the recorded samples."""
    values = xi_traj.values()
    rates = xi_traj.rates
    if rates is None:
        rates = np.gradient(values, xi_traj.times, axis=0) if len(values) > 1 else np.zeros_like(values)
    g = group.identity
    curve = [g]
    for k in range(len(values) - 1):
        step = float(xi_traj.times[k + 1] - xi_traj.times[k])
        stages = {
            0.0: values[k],
            0.5: hermite_midpoint(values[k], values[k + 1], rates[k], rates[k + 1], step),
            1.0: values[k + 1],
        }
        generators = {c: group.embed(scale * h.gradient(v)) for c, v in stages.items()}
        g = rkmk4_step(g, lambda c, _y: generators[c], step)
        _check_finite(g, float(xi_traj.times[k + 1]), "group reconstruction")
        g = group.renormalize(g, tol=renormalize_tol, context=f"t={xi_traj.times[k + 1]:.4g}")
        curve.append(g)
    return Trajectory(xi_traj.times, xi_traj.states, curve, xi_traj.rates)


def collective_trajectory(
    space: HamiltonianSpace,
    p0: PhasePoint,
    h: CollectiveHamiltonian,
    T: float,
    dt: float,
    *,
    progress: bool = False,
) -> tuple[Trajectory, Trajectory]:
    """p(t) = g(t) . p0; returns (phase trajectory, momentum trajectory with the curve)."""
    xi0 = space.momentum(p0)
    flow = lie_poisson_flow(h, space.target, xi0, T, dt, scale=space.polarity, progress=progress)
    shared = reconstruct_group_curve(h, flow, space.acting_group, scale=space.polarity)
    assert shared.group_curve is not None
    states = [space.act(g, p0) for g in shared.group_curve]
    return Trajectory(shared.times, states, shared.group_curve), shared


def trajectory_from_curve(space: HamiltonianSpace, p0: PhasePoint, shared: Trajectory) -> Trajectory:
    if shared.group_curve is None:
        raise DomainError("trajectory carries no group curve")
    return Trajectory(shared.times, [space.act(g, p0) for g in shared.group_curve], shared.group_curve)


def direct_trajectory(
    space: HamiltonianSpace,
    p0: PhasePoint,
    H: SpaceFunction,
    T: float,
    dt: float,
    *,
    gradient: Callable[[PhasePoint], np.ndarray] | None = None,
    fd_step: float = FD_STEP,
    progress: bool = False,
) -> Trajectory:
    """RK4 on omega(V, .) = dH(.), stepped in the exponential chart around each point."""
    times, step = time_grid(T, dt)
    nb = space.base_dim
    alg = space.base_group.algebra

    def dH(q: PhasePoint) -> np.ndarray:
        return gradient(q) if gradient is not None else space.differential(H, q, fd_step)

    def chart_rhs(anchor: PhasePoint) -> Callable[[float, np.ndarray], np.ndarray]:
        def rhs(_t: float, u: np.ndarray) -> np.ndarray:
            q = space.retract(anchor, u)
            v = space.hamiltonian_vector(q, dH(q))
            if nb == 0:
                return v
            return np.r_[dexpinv(-u[:nb], v[:nb], alg.bracket_coords), v[nb:]]
        return rhs

    p = p0
    states = [p]
    with _progress(len(times) - 1, space.kind, progress) as bar:
        for t in times[:-1]:
            u, _ = rk4_step(chart_rhs(p), float(t), np.zeros(space.dim), step)
            _check_finite(u, float(t + step), f"{space.kind} direct flow")
            p = space.retract(p, u)
            if nb:
                base = space.base_group.renormalize(p.base, tol=RENORMALIZE_TOL, context=space.kind)
                p = PhasePoint(base, p.fiber)
            states.append(p)
            bar.update()
    return Trajectory(times, states)


def sup_distance(space: HamiltonianSpace, a: Sequence[PhasePoint], b: Sequence[PhasePoint]) -> float:
    if len(a) != len(b):
        raise DomainError(f"trajectories differ in length: {len(a)} vs {len(b)}")
    return max((space.distance(p, q) for p, q in zip(a, b)), default=0.0)
