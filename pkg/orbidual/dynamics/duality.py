"""Dual trajectories driven by one shared group curve."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from orbidual.core.errors import DomainError, PreconditionError
from orbidual.dynamics.flows import (
    Trajectory,
    collective_trajectory,
    direct_trajectory,
    sup_distance,
    trajectory_from_curve,
)
from orbidual.dynamics.hamiltonians import CollectiveHamiltonian
from orbidual.extension.poisson import FD_STEP
from orbidual.hamspaces.base import HamiltonianSpace, PhasePoint

log = logging.getLogger("orbidual.dynamics")

COMPATIBLE_TOL = 1e-8


@dataclass
class DualityReport:
    scenario: str
    T: float
    dt: float
    residual_A: float
    residual_B: float
    momentum_drift: float
    energy_drift: float
    trajectory_A: Trajectory | None = field(default=None, repr=False)
    trajectory_B: Trajectory | None = field(default=None, repr=False)
    momenta: Trajectory | None = field(default=None, repr=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario": self.scenario,
            "T": self.T,
            "dt": self.dt,
            "residual_A": self.residual_A,
            "residual_B": self.residual_B,
            "momentum_drift": self.momentum_drift,
            "energy_drift": self.energy_drift,
        }

    def within(self, tol: float) -> bool:
        return max(self.residual_A, self.residual_B) < tol


def momentum_drift(space: HamiltonianSpace, traj: Trajectory, momenta: Trajectory) -> float:
    return max(
        (float(np.abs(space.momentum(p).xi - m.xi).max()) for p, m in zip(traj.states, momenta.states)),
        default=0.0,
    )


def energy_drift(h: CollectiveHamiltonian, momenta: Trajectory) -> float:
    values = np.array([h(m.xi) for m in momenta.states])
    return float(np.abs(values - values[0]).max()) if len(values) else 0.0


def duality_run(
    space_a: HamiltonianSpace,
    p0_a: PhasePoint,
    space_b: HamiltonianSpace,
    p0_b: PhasePoint,
    h: CollectiveHamiltonian,
    T: float,
    dt: float,
    *,
    scenario: str = "",
    direct: bool = True,
    fd_step: float = FD_STEP,
    progress: bool = False,
) -> DualityReport:
    """Drive both spaces with the curve generated by their common momentum.

    With ``direct`` each side is also integrated on its own and the
    sup-norm gap is reported as ``residual_A`` / ``residual_B``.
    """
    mu_a, mu_b = space_a.momentum(p0_a), space_b.momentum(p0_b)
    gap = float(np.abs(mu_a.xi - mu_b.xi).max()) + abs(mu_a.b - mu_b.b)
    if gap >= COMPATIBLE_TOL:
        raise PreconditionError(
            f"initial momenta differ by {gap:.3e}",
            momentum_a=mu_a.xi.tolist(),
            momentum_b=mu_b.xi.tolist(),
        )
    if space_a.polarity != space_b.polarity:
        raise DomainError(f"{space_a.kind} and {space_b.kind} have opposite momentum polarity")

    traj_a, shared = collective_trajectory(space_a, p0_a, h, T, dt, progress=progress)
    traj_b = trajectory_from_curve(space_b, p0_b, shared)
    drift = max(momentum_drift(space_a, traj_a, shared), momentum_drift(space_b, traj_b, shared))

    residual_a = residual_b = 0.0
    if direct:
        ref_a = direct_trajectory(space_a, p0_a, h.lifted(space_a), T, dt, fd_step=fd_step, progress=progress)
        ref_b = direct_trajectory(space_b, p0_b, h.lifted(space_b), T, dt, fd_step=fd_step, progress=progress)
        residual_a = sup_distance(space_a, traj_a.states, ref_a.states)
        residual_b = sup_distance(space_b, traj_b.states, ref_b.states)
    log.debug("duality %s: residuals %.3e / %.3e, momentum drift %.3e", scenario, residual_a, residual_b, drift)
    return DualityReport(
        scenario, T, dt, residual_a, residual_b, drift, energy_drift(h, shared),
        trajectory_A=traj_a, trajectory_B=traj_b, momenta=shared,
    )
