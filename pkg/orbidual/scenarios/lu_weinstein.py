"""T-duality on the Lu-Weinstein double SL(2,C) = AN(2) * SU(2).

With alpha in the Cartan line the pair T*N, T*N* is driven by one curve in
SL(2,C).  With a root component the shifted momentum stops being Poisson;
the scenario then passes when the condition checker and the measured
bracket residual agree on that failure.
"""

from __future__ import annotations

import logging
from itertools import combinations

import numpy as np

from orbidual.dynamics.duality import duality_run
from orbidual.dynamics.hamiltonians import sigma_hamiltonian
from orbidual.dynamics.sigma import random_involution
from orbidual.extension.checks import check_alpha_condition
from orbidual.extension.poisson import LinearObservable
from orbidual.groups import get_group
from orbidual.groups.double import DoubleGroup
from orbidual.hamspaces.base import HamiltonianSpace, PhasePoint
from orbidual.hamspaces.chiral import ChiralSpace
from orbidual.hamspaces.cotangent import CotangentN, CotangentNstar
from orbidual.hamspaces.diagnostics import equivariance_residual, poisson_map_residual
from orbidual.scenarios import (
    DualitySetup,
    ScenarioContext,
    ScenarioOutcome,
    TrajectoryArtifact,
    register_duality,
    register_scenario,
)

log = logging.getLogger("orbidual.scenarios")

NAME = "lu-weinstein-su2"


def _random_point(space: HamiltonianSpace, rng: np.random.Generator, scale: float) -> PhasePoint:
    base = space.base_group.exp(scale * rng.standard_normal(space.base_group.algebra.dim))
    return space.point(base, rng.standard_normal(space.fiber_dim))


def poisson_residual(space: HamiltonianSpace, point: PhasePoint) -> tuple[float, tuple[int, int]]:
    """Worst bracket residual over pairs of linear basis observables."""
    dim = space.target.group.algebra.dim
    basis = np.eye(dim)
    worst, pair = 0.0, (0, 0)
    for i, j in combinations(range(dim), 2):
        r = poisson_map_residual(space, point, LinearObservable(basis[i]), LinearObservable(basis[j]))
        if r > worst:
            worst, pair = r, (i, j)
    return worst, pair


def equivariance_sweep(
    spaces: dict[str, HamiltonianSpace],
    double: DoubleGroup,
    rng: np.random.Generator,
    samples: int,
    scale: float,
) -> dict[str, float]:
    worst = {name: 0.0 for name in spaces}
    for _ in range(samples):
        l = double.total.exp(scale * rng.standard_normal(double.algebra.dim))
        for name, space in spaces.items():
            p = _random_point(space, rng, scale)
            worst[name] = max(worst[name], equivariance_residual(space, l, p))
    return worst


def _dual_pair(double: DoubleGroup, alpha: np.ndarray, l: np.ndarray) -> tuple:
    """T*N at l.(e, alpha) and T*N* at l.(e, 0); both start on the orbit of psi(0, alpha)."""
    tn = CotangentN(double, alpha=alpha, action="dhat0", momentum="mu00")
    tns = CotangentNstar(double, alpha=alpha, momentum="mutildephi")
    return tn, tn.act(l, tn.point(fiber=alpha)), tns, tns.act(l, tns.point())


def _setup(ctx: ScenarioContext) -> DualitySetup:
    p = ctx.params
    double = get_group("lu_weinstein_su2")
    alpha = np.asarray(p["alpha"], dtype=float)
    op = random_involution(
        double.algebra, np.random.default_rng(p["operator_seed"]), conditioning_bound=ctx.numerics.conditioning_bound,
    )
    l = double.total.exp(p["scale"] * np.random.default_rng([ctx.seed, 1]).standard_normal(double.algebra.dim))
    tn, p_a, tns, p_b = _dual_pair(double, alpha, l)
    return DualitySetup(tn, p_a, tns, p_b, sigma_hamiltonian(op.matrix, double.algebra.psi), p["T"], p["dt"])


@register_scenario(
    NAME,
    summary="T*N vs T*N* on SL(2,C) = AN(2) * SU(2); root-direction alpha is detected",
    defaults={
        "alpha": [0.3, 0.0, 0.0],
        "operator_seed": 7,
        "scale": 0.4,
        "T": 1.0,
        "dt": 1e-2,
        "equivariance_samples": 100,
        "poisson_samples": 3,
        "poisson_tol": 1e-8,
        "detect_tol": 1e-3,
    },
    tolerances={
        "detection_mismatch": 0.5,
        "equivariance_cotangent_N": 1e-9,
        "equivariance_cotangent_N_alpha": 1e-9,
        "equivariance_cotangent_Nstar": 1e-9,
        "equivariance_chiral": 1e-9,
        "residual_A": 1e-5,
        "residual_B": 1e-5,
        "energy_drift": 1e-7,
    },
)
def lu_weinstein_su2(ctx: ScenarioContext) -> ScenarioOutcome:
    """T*N vs T*N* on SL(2,C) = AN(2) * SU(2); root-direction alpha is detected."""
    p = ctx.params
    double = get_group("lu_weinstein_su2")
    alpha = np.asarray(p["alpha"], dtype=float)
    condition = check_alpha_condition(alpha, double.algebra)

    probe = CotangentNstar(double, alpha=alpha, momentum="mutildephi", enforce_condition=False)
    poisson, pair = 0.0, (0, 0)
    for _ in range(p["poisson_samples"]):
        r, ij = poisson_residual(probe, _random_point(probe, ctx.rng, p["scale"]))
        if r > poisson:
            poisson, pair = r, ij
    detected = poisson > p["detect_tol"]
    agrees = (condition.ok and poisson < p["poisson_tol"]) or (not condition.ok and detected)

    metrics = {"detection_mismatch": 0.0 if agrees else 1.0, "poisson_residual": poisson}
    info = {
        "condition": condition.to_dict(),
        "poisson_pair": list(pair),
        "expected_failure": not condition.ok,
    }
    if not condition.ok:
        log.info("alpha violates the condition; Poisson failure %s", "detected" if detected else "missed")
        return ScenarioOutcome(metrics, info, skipped=[
            "equivariance_cotangent_N", "equivariance_cotangent_N_alpha", "equivariance_cotangent_Nstar",
            "equivariance_chiral", "residual_A", "residual_B", "energy_drift",
        ])

    spaces: dict[str, HamiltonianSpace] = {
        "equivariance_cotangent_N": CotangentN(double, alpha=alpha, action="dhat0", momentum="mu00"),
        "equivariance_cotangent_N_alpha": CotangentN(double, alpha=alpha, action="dhatAlpha", momentum="mu0alpha"),
        "equivariance_cotangent_Nstar": probe,
        "equivariance_chiral": ChiralSpace(double.total),
    }
    metrics.update(equivariance_sweep(spaces, double, ctx.rng, p["equivariance_samples"], p["scale"]))

    setup = _setup(ctx)
    report = duality_run(
        setup.space_a, setup.p0_a, setup.space_b, setup.p0_b, setup.hamiltonian,
        setup.T, setup.dt, scenario=NAME, fd_step=ctx.numerics.fd_step, progress=ctx.progress,
    )
    metrics.update({
        "residual_A": report.residual_A,
        "residual_B": report.residual_B,
        "energy_drift": report.energy_drift,
        "momentum_drift": report.momentum_drift,
    })
    traj_a, traj_b, shared = report.trajectory_A, report.trajectory_B, report.momenta
    assert traj_a is not None and traj_b is not None and shared is not None
    return ScenarioOutcome(
        metrics, info,
        trajectories=[
            TrajectoryArtifact("cotangent_N", traj_a.times, np.array([s.fiber for s in traj_a.states]),
                               setup.space_a.coordinate_labels(), [s.base for s in traj_a.states]),
            TrajectoryArtifact("cotangent_Nstar", traj_b.times, np.array([s.fiber for s in traj_b.states]),
                               setup.space_b.coordinate_labels(), [s.base for s in traj_b.states]),
            TrajectoryArtifact("momentum", shared.times, shared.values(), None, shared.group_curve),
        ],
    )


register_duality(NAME)(_setup)
