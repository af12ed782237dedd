"""Tests for Fourier loops, loop-group paths, monodromy and the loop flows."""

from __future__ import annotations

import numpy as np
import pytest
from scipy.linalg import expm

from orbidual.core.errors import DimensionError, DomainError, PolicyError, RepresentationError
from orbidual.dynamics.sigma import random_involution
from orbidual.extension.checks import condition_subspace
from orbidual.groups import get_group
from orbidual.loopx import (
    EnlargedState,
    FourierLoop,
    LoopCocycle,
    LoopGroupPath,
    TruncationPolicy,
    embed_e_alpha,
    enlarged_flow,
    gamma_cocycle,
    holonomy,
    loop_bracket,
    loop_collective_flow,
    monodromic_lagrangian,
    monodromic_lagrangian_space,
    monodromy,
    wznw_flow,
)
from orbidual.loopx.fourier import PROJECT, collocation
from orbidual.loopx.lagrangian import open_string_path, space_velocity
from orbidual.loopx.paths import eigenvalue_drift

RNG = np.random.default_rng(7)
CARTAN = np.array([0.3, 0.0, 0.0])


def _double():
    return get_group("lu_weinstein_su2")


def _path(group, P: int = 32, band: int = 1, scale: float = 0.2) -> LoopGroupPath:
    return LoopGroupPath.from_loop(group, FourierLoop.random(group.algebra, band, RNG, scale), P)


class TestFourierLoop:
    def test_constant(self):
        alg = _double().nstar_group.algebra
        loop = FourierLoop.constant(alg, [1.0, 2.0, 3.0], band=2)
        assert loop.band == 2
        assert np.allclose(loop.samples(8), np.tile([1.0, 2.0, 3.0], (8, 1)))

    def test_cosine_and_sine(self):
        alg = _double().nstar_group.algebra
        a = np.array([1.0, -1.0, 0.5])
        s = collocation(16)
        assert np.allclose(FourierLoop.cosine(alg, a, 2).values(s), np.outer(np.cos(2 * s), a))
        assert np.allclose(FourierLoop.sine(alg, a).values(s), np.outer(np.sin(s), a))

    def test_derivative_of_sine(self):
        alg = _double().nstar_group.algebra
        a = np.array([0.0, 1.0, 0.0])
        assert FourierLoop.sine(alg, a).derivative().distance(FourierLoop.cosine(alg, a)) < 1e-12

    def test_from_samples(self):
        alg = _double().nstar_group.algebra
        loop = FourierLoop.random(alg, 3, RNG)
        assert FourierLoop.from_samples(alg, loop.samples(16), 3).distance(loop) < 1e-12

    def test_reality_enforced(self):
        alg = _double().nstar_group.algebra
        coeffs = np.zeros((3, 3), dtype=complex)
        coeffs[2, 0] = 1.0
        with pytest.raises(DomainError):
            FourierLoop(alg, coeffs)
        with pytest.raises(DimensionError):
            FourierLoop(alg, np.zeros((2, 3)))

    def test_tail_energy(self):
        alg = _double().nstar_group.algebra
        loop = FourierLoop.cosine(alg, [2.0, 0.0, 0.0], 3)
        assert loop.tail_energy(3) == 0.0
        assert loop.tail_energy(2) == pytest.approx(2.0)


class TestLoopBracket:
    def test_constants_bracket_pointwise(self):
        alg = _double().nstar_group.algebra
        x, y = RNG.standard_normal((2, 3))
        out = loop_bracket(FourierLoop.constant(alg, x), FourierLoop.constant(alg, y))
        assert np.allclose(out.samples(4), alg.bracket_coords(x, y))

    def test_band_grows(self):
        alg = _double().nstar_group.algebra
        x, y = FourierLoop.random(alg, 2, RNG), FourierLoop.random(alg, 3, RNG)
        out = loop_bracket(x, y)
        assert out.band == 5
        s = collocation(32)
        expected = np.array([alg.bracket_coords(a, b) for a, b in zip(x.values(s), y.values(s))])
        assert np.allclose(out.values(s), expected)

    def test_exact_policy_overflow(self):
        alg = _double().nstar_group.algebra
        x = FourierLoop.random(alg, 3, RNG)
        with pytest.raises(PolicyError):
            loop_bracket(x, x, TruncationPolicy(band=2))

    def test_projection(self):
        alg = _double().nstar_group.algebra
        x, y = FourierLoop.random(alg, 3, RNG), FourierLoop.random(alg, 3, RNG)
        assert loop_bracket(x, y, TruncationPolicy(PROJECT, 2)).band == 2

    def test_bad_policy(self):
        with pytest.raises(DomainError):
            TruncationPolicy("round")

    def test_gamma_cocycle_of_cos_and_sin(self):
        alg = _double().total.algebra
        a, b = RNG.standard_normal((2, 6))
        value = gamma_cocycle(2.0, FourierLoop.cosine(alg, a), FourierLoop.sine(alg, b))
        assert value == pytest.approx(a @ alg.pairing @ b)

    def test_jacobi(self):
        alg = _double().total.algebra
        policy = TruncationPolicy(band=8)
        x, y, z = (FourierLoop.random(alg, 1, RNG, 0.5) for _ in range(3))
        cyclic = (
            loop_bracket(loop_bracket(x, y, policy), z, policy)
            + loop_bracket(loop_bracket(y, z, policy), x, policy)
            + loop_bracket(loop_bracket(z, x, policy), y, policy)
        )
        assert np.abs(cyclic.coeffs).max() < 1e-12

    def test_gamma_cocycle_identity(self):
        alg = _double().total.algebra
        policy = TruncationPolicy(band=8)
        x, y, z = (FourierLoop.random(alg, 1, RNG, 0.5) for _ in range(3))
        terms = [
            gamma_cocycle(2.0, loop_bracket(x, y, policy), z),
            gamma_cocycle(2.0, loop_bracket(y, z, policy), x),
            gamma_cocycle(2.0, loop_bracket(z, x, policy), y),
        ]
        assert max(abs(t) for t in terms) > 1e-6
        assert abs(sum(terms)) < 1e-12


class TestLoopGroupPath:
    def test_constant_path_is_closed(self):
        path = LoopGroupPath.constant(_double().total, 8)
        assert path.closed
        assert path.P == 8
        assert path.to_dict()["samples"] == 8

    def test_off_group_sample_rejected(self):
        group = _double().nstar_group
        with pytest.raises(RepresentationError):
            LoopGroupPath(group, np.broadcast_to(2.0 * group.identity, (4, 2, 2)).copy())

    def test_log_derivative_of_one_parameter_loop(self):
        group = _double().nstar_group
        a = np.array([0.0, 0.4, 0.0])
        path = LoopGroupPath.from_loop(group, FourierLoop.cosine(group.algebra, a), 32)
        expected = -np.outer(np.sin(path.grid), a)
        assert np.allclose(path.log_derivative_coords(), expected, atol=1e-10)

    def test_open_path_has_no_inverse(self):
        double = _double()
        path = open_string_path(double, LoopGroupPath.constant(double.nstar_group, 16), CARTAN)
        assert not path.closed
        with pytest.raises(DomainError):
            path.inverse()


class TestMonodromy:
    def test_constant_alpha(self):
        group = _double().nstar_group
        mono = monodromy(FourierLoop.constant(group.algebra, CARTAN), group, 32)
        assert np.allclose(mono.matrix, expm(2.0 * np.pi * group.embed(CARTAN)), atol=1e-10)
        assert len(mono.samples) == 33

    def test_undersampled(self):
        group = _double().nstar_group
        with pytest.raises(DomainError):
            monodromy(FourierLoop.random(group.algebra, 4, RNG), group, 8)

    def test_embedding_carries_monodromy(self):
        double = _double()
        alpha = FourierLoop.constant(double.nstar_group.algebra, CARTAN)
        path = embed_e_alpha(LoopGroupPath.constant(double.total, 32), alpha, double)
        assert not path.closed
        assert np.allclose(path.monodromy, expm(2.0 * np.pi * double.nstar_group.embed(CARTAN)), atol=1e-10)

    def test_holonomy_of_constant_loop(self):
        group = _double().nstar_group
        xi = np.tile(CARTAN, (16, 1))
        assert np.allclose(holonomy(xi, group), expm(2.0 * np.pi * group.embed(CARTAN)), atol=1e-10)

    def test_eigenvalue_drift_is_conjugation_invariant(self):
        m = _double().total.exp(RNG.standard_normal(6))
        g = _double().total.exp(RNG.standard_normal(6))
        assert eigenvalue_drift(m, g @ m @ np.linalg.inv(g)) < 1e-8


class TestLoopCocycle:
    def test_identity_on_closed_paths(self):
        total = _double().total
        cocycle = LoopCocycle(total, k=1.5, samples=32)
        assert cocycle.identity_residual(_path(total), _path(total)) < 1e-8

    def test_differential_and_antisymmetry(self):
        cocycle = LoopCocycle(_double().total, samples=32)
        assert cocycle.differential_residual() < 1e-4
        assert cocycle.antisymmetry_residual() < 1e-12

    def test_no_finite_matrix(self):
        cocycle = LoopCocycle(_double().total)
        with pytest.raises(DomainError):
            cocycle.chat
        with pytest.raises(DomainError):
            cocycle.shifted(np.zeros(6))

    def test_open_path_rejected(self):
        double = _double()
        cocycle = LoopCocycle(double.total, samples=16)
        opened = open_string_path(double, LoopGroupPath.constant(double.nstar_group, 16), CARTAN)
        with pytest.raises(DomainError):
            cocycle(opened)


class TestMonodromicLagrangian:
    def test_body_and_space_forms_agree(self):
        double = _double()
        op = random_involution(double.algebra, np.random.default_rng(7))
        gtilde = _path(double.nstar_group)
        v = FourierLoop.random(double.algebra.nstar_algebra, 1, RNG, 0.2).samples(32)
        body = monodromic_lagrangian(double, op, gtilde, v, CARTAN)
        space = monodromic_lagrangian_space(double, op, gtilde, space_velocity(double, gtilde, v), CARTAN)
        assert body == pytest.approx(space, abs=1e-8)

    def test_open_string_absorbs_alpha(self):
        double = _double()
        op = random_involution(double.algebra, np.random.default_rng(7))
        gtilde = _path(double.nstar_group)
        w = space_velocity(double, gtilde, FourierLoop.random(double.algebra.nstar_algebra, 1, RNG, 0.2).samples(32))
        shifted = monodromic_lagrangian_space(double, op, gtilde, w, CARTAN)
        opened = monodromic_lagrangian_space(double, op, open_string_path(double, gtilde, CARTAN), w)
        assert opened == pytest.approx(shifted, abs=1e-8)

    def test_velocity_shape(self):
        double = _double()
        op = random_involution(double.algebra, np.random.default_rng(7))
        with pytest.raises(DimensionError):
            monodromic_lagrangian(double, op, _path(double.nstar_group), np.zeros((5, 3)), CARTAN)


class TestLoopFlows:
    def test_zero_hamiltonian_keeps_path(self):
        double = _double()
        l0 = _path(double.total, P=16)
        flow = loop_collective_flow(None, double, np.zeros((16, 6)), l0, 0.02, 0.01)
        assert len(flow) == 3
        assert np.allclose(flow.final.samples, l0.samples)

    def test_open_start_rejected(self):
        double = _double()
        opened = open_string_path(double, LoopGroupPath.constant(double.nstar_group, 16), CARTAN)
        with pytest.raises(DomainError):
            loop_collective_flow(None, double, np.zeros((16, 6)), opened, 0.02, 0.01)

    def test_wznw_flow_conserves_holonomy_spectrum(self):
        double = _double()
        op = random_involution(double.algebra, np.random.default_rng(7))
        flow = wznw_flow(op, double, _path(double.total), CARTAN, 0.05, 0.005, band=4)
        assert flow.eigen_drift < 1e-5
        assert 0 in flow.holonomies

    def test_enlarged_flow(self):
        double = _double()
        op = random_involution(double.algebra, np.random.default_rng(7))
        basis = condition_subspace(double.algebra)
        state = EnlargedState(
            _path(double.nstar_group),
            FourierLoop.random(double.algebra.n_algebra, 1, RNG, 0.2).samples(32),
            CARTAN,
            np.zeros(basis.shape[1]),
        )
        traj = enlarged_flow(op, double, state, 0.02, 0.01, band=4)
        assert len(traj) == 3
        assert traj.alpha_drift == 0.0
        assert traj.momentum_residual < 1e-6
        assert traj.final.lam.shape == (1,)

    def test_enlarged_lambda_dimension(self):
        double = _double()
        state = EnlargedState(LoopGroupPath.constant(double.nstar_group, 16), np.zeros((16, 3)), CARTAN, np.zeros(2))
        with pytest.raises(DimensionError):
            enlarged_flow(None, double, state, 0.01, 0.01)
