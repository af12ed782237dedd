"""Tests for matrix groups, factorization in double groups and dressing."""

from __future__ import annotations

import numpy as np
import pytest
from scipy.linalg import expm

from orbidual.core.errors import ConfigurationError, DomainError, FactorizationError, RepresentationError
from orbidual.groups import get_group, list_groups
from orbidual.groups.double import N_FIRST, NSTAR_FIRST, dress, dressing_generator, dual_dress
from orbidual.groups.iwasawa import iwasawa_split
from orbidual.groups.matrix import adjoint, exp_map

RNG = np.random.default_rng(1)


def _random_sl2c(double, scale: float = 0.5) -> np.ndarray:
    return double.total.exp(scale * RNG.standard_normal(double.algebra.dim))


class TestLieGroup:
    def test_exp_lands_in_group(self):
        double = get_group("lu_weinstein_su2")
        x = RNG.standard_normal(3)
        assert double.nstar_group.membership_residual(double.nstar_group.exp(x)) < 1e-10
        assert double.n_group.membership_residual(double.n_group.exp(x)) < 1e-10

    def test_pullback_inverts_embed(self):
        group = get_group("lu_weinstein_su2").total
        x = RNG.standard_normal(6)
        assert np.allclose(group.pullback(group.embed(x)), x)

    def test_pullback_rejects_foreign_matrix(self):
        su2 = get_group("lu_weinstein_su2").nstar_group
        with pytest.raises(RepresentationError):
            su2.pullback(np.eye(2, dtype=complex))

    def test_adjoint_of_exp_is_exp_of_ad(self):
        group = get_group("rigid_body_se2", inertia=(1.0, 2.0, 3.0))
        x = RNG.standard_normal(3)
        assert np.allclose(group.adjoint_matrix(group.exp(x)), expm(group.algebra.ad_matrix(x)), atol=1e-10)

    def test_adjoint_homomorphism(self):
        double = get_group("lu_weinstein_su2")
        l, k = _random_sl2c(double), _random_sl2c(double)
        total = double.total
        assert np.allclose(total.adjoint_matrix(l @ k), total.adjoint_matrix(l) @ total.adjoint_matrix(k), atol=1e-10)

    def test_element_helpers(self):
        group = get_group("se2")
        g = exp_map(group, [0.3, 1.0, -2.0])
        x = np.array([0.0, 1.0, 0.0])
        assert np.allclose(adjoint(g, x), group.adjoint_matrix(g.matrix) @ x)
        assert (g @ g.inverse()).membership_residual < 1e-12

    def test_non_member_rejected(self):
        group = get_group("se2")
        with pytest.raises(RepresentationError):
            group.element(2.0 * np.eye(3))


class TestFactorization:
    def test_both_orders_reassemble(self):
        double = get_group("lu_weinstein_su2")
        l = _random_sl2c(double)
        for order in (N_FIRST, NSTAR_FIRST):
            fac = double.factorize(l, order)
            assert np.allclose(fac.product(), l, atol=1e-10)
            assert double.n_group.membership_residual(fac.g) < 1e-10
            assert double.nstar_group.membership_residual(fac.htilde) < 1e-10

    def test_iwasawa_factors(self):
        l = _random_sl2c(get_group("lu_weinstein_su2"))
        k, r = iwasawa_split(l)
        assert np.allclose(k.conj().T @ k, np.eye(2), atol=1e-12)
        assert np.allclose(np.tril(r, -1), 0.0)
        assert np.all(np.diag(r).real > 0)

    def test_singular_input_fails(self):
        double = get_group("lu_weinstein_su2")
        with pytest.raises(FactorizationError):
            double.factorize(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex), NSTAR_FIRST)

    def test_unknown_order(self):
        double = get_group("lu_weinstein_su2")
        with pytest.raises(DomainError):
            double.factorize(double.total.identity, "sideways")

    def test_abelian_double(self):
        double = get_group("abelian_double", n=2)
        l = double.total.exp([1.0, 2.0, 3.0, 4.0])
        fac = double.factorize(l, N_FIRST)
        assert np.allclose(fac.g, double.n_group.exp([1.0, 2.0]))
        assert np.allclose(fac.htilde, double.nstar_group.exp([3.0, 4.0]))


class TestDressing:
    def test_identity_acts_trivially(self):
        double = get_group("lu_weinstein_su2")
        g = double.n_group.exp(RNG.standard_normal(3))
        assert np.allclose(dress(double, double.nstar_group.identity, g), g)

    def test_result_in_factor(self):
        double = get_group("lu_weinstein_su2")
        g = double.n_group.exp(RNG.standard_normal(3))
        h = double.nstar_group.exp(RNG.standard_normal(3))
        assert double.n_group.membership_residual(dress(double, h, g)) < 1e-10
        assert double.nstar_group.membership_residual(dual_dress(double, g, h)) < 1e-10

    def test_generator_matches_finite_difference(self):
        double = get_group("lu_weinstein_su2")
        g = double.n_group.exp(0.5 * RNG.standard_normal(3))
        xi = RNG.standard_normal(3)
        t = 1e-5
        plus = dress(double, double.nstar_group.exp(-t * xi), g)
        minus = dress(double, double.nstar_group.exp(t * xi), g)
        body = double.n_group.pullback(np.linalg.inv(g) @ (plus - minus) / (2.0 * t), check=False)
        assert np.allclose(body, dressing_generator(double, xi, g), atol=1e-6)


class TestRegistry:
    def test_builtins_listed(self):
        assert {"se2", "rigid_body_se2", "lu_weinstein_su2", "abelian_double"} <= set(list_groups())

    def test_unknown(self):
        with pytest.raises(ConfigurationError, match="unknown group"):
            get_group("E8")
