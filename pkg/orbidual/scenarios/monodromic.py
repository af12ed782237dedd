"""Closed and open strings on the loop double: monodromy, WZNW flow, Lagrangian forms, enlarged flow."""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from orbidual.dynamics.sigma import random_involution
from orbidual.extension.checks import condition_subspace
from orbidual.groups import get_group
from orbidual.groups.double import DoubleGroup
from orbidual.loopx.flows import EnlargedState, enlarged_flow, wznw_flow
from orbidual.loopx.fourier import FourierLoop
from orbidual.loopx.lagrangian import (
    monodromic_lagrangian,
    monodromic_lagrangian_space,
    open_string_path,
    space_velocity,
)
from orbidual.loopx.paths import LoopGroupPath, monodromy
from orbidual.scenarios import ScenarioContext, ScenarioOutcome, TrajectoryArtifact, register_scenario


def _loop_path(double: DoubleGroup, group_name: str, rng: np.random.Generator, p: dict) -> LoopGroupPath:
    group = getattr(double, group_name)
    loop = FourierLoop.random(group.algebra, p["loop_band"], rng, p["loop_scale"])
    return LoopGroupPath.from_loop(group, loop, p["samples"])


def _band_samples(algebra, rng: np.random.Generator, p: dict) -> np.ndarray:
    return FourierLoop.random(algebra, p["loop_band"], rng, p["loop_scale"]).samples(p["samples"])


def lagrangian_gaps(double: DoubleGroup, op, alpha: np.ndarray, rng: np.random.Generator, p: dict) -> tuple[float, float]:
    """Body vs space form, and the space form at g~ vs at the open string m~ = g~ e^{s alpha}."""
    forms, open_string = 0.0, 0.0
    for _ in range(p["lagrangian_samples"]):
        gtilde = _loop_path(double, "nstar_group", rng, p)
        v = _band_samples(double.algebra.nstar_algebra, rng, p)
        w = space_velocity(double, gtilde, v)
        body = monodromic_lagrangian(double, op, gtilde, v, alpha)
        space = monodromic_lagrangian_space(double, op, gtilde, w, alpha)
        opened = monodromic_lagrangian_space(double, op, open_string_path(double, gtilde, alpha), w)
        forms = max(forms, abs(body - space))
        open_string = max(open_string, abs(opened - space))
    return forms, open_string


@register_scenario(
    "monodromic-string",
    summary="Monodromic string on SL(2,C): monodromy, WZNW flow, dual Lagrangians, enlarged flow",
    defaults={
        "alpha": [0.3, 0.0, 0.0],
        "operator_seed": 7,
        "samples": 64,
        "band": 8,
        "loop_band": 2,
        "loop_scale": 0.2,
        "T": 1.0,
        "dt": 1e-2,
        "lagrangian_samples": 50,
        "enlarged_T": 0.2,
    },
    tolerances={
        "monodromy_error": 1e-8,
        "wznw_eigen_drift": 1e-5,
        "lagrangian_gap": 1e-8,
        "open_string_gap": 1e-8,
        "enlarged_alpha_drift": 1e-12,
        "enlarged_eigen_drift": 1e-5,
        "enlarged_momentum_residual": 1e-6,
    },
)
def monodromic_string(ctx: ScenarioContext) -> ScenarioOutcome:
    """Monodromic string on SL(2,C): monodromy, WZNW flow, dual Lagrangians, enlarged flow."""
    p = ctx.params
    double = get_group("lu_weinstein_su2")
    alg = double.algebra
    alpha = np.asarray(p["alpha"], dtype=float)
    op = random_involution(alg, np.random.default_rng(p["operator_seed"]), conditioning_bound=ctx.numerics.conditioning_bound)
    P, band = p["samples"], p["band"]

    constant = FourierLoop.constant(double.nstar_group.algebra, alpha)
    mono = monodromy(constant, double.nstar_group, P)
    exact = expm(2.0 * np.pi * double.nstar_group.embed(alpha))
    monodromy_error = float(np.abs(mono.matrix - exact).max())

    l0 = _loop_path(double, "total", ctx.rng, p)
    flow = wznw_flow(op, double, l0, alpha, p["T"], p["dt"], band=band, progress=ctx.progress)

    forms, open_string = lagrangian_gaps(double, op, alpha, ctx.rng, p)

    basis = condition_subspace(alg)
    state = EnlargedState(
        _loop_path(double, "nstar_group", ctx.rng, p),
        _band_samples(alg.n_algebra, ctx.rng, p),
        alpha,
        np.zeros(basis.shape[1]),
    )
    enlarged = enlarged_flow(op, double, state, p["enlarged_T"], p["dt"], band=band, progress=ctx.progress)
    lam = np.array([s.lam for s in enlarged.states])

    final_momentum = FourierLoop.from_samples(double.total.algebra, flow.momenta[-1], band)
    return ScenarioOutcome(
        metrics={
            "monodromy_error": monodromy_error,
            "wznw_eigen_drift": flow.eigen_drift,
            "lagrangian_gap": forms,
            "open_string_gap": open_string,
            "enlarged_alpha_drift": enlarged.alpha_drift,
            "enlarged_eigen_drift": enlarged.eigen_drift,
            "enlarged_momentum_residual": enlarged.momentum_residual,
        },
        info={
            "tail_energy": flow.tail_energy,
            "lambda_change": float(np.abs(lam[-1] - lam[0]).max(initial=0.0)),
            "checkpoints": sorted(int(k) for k in flow.holonomies),
        },
        trajectories=[
            TrajectoryArtifact("lambda", enlarged.times, lam, [f"lambda_{i + 1}" for i in range(lam.shape[1])]),
        ],
        loops={"loop_final": flow.final.samples},
        spectra={"momentum_spectrum": (final_momentum.coeffs, final_momentum.band)},
    )
