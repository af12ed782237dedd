"""Tests for sigma operators, their block decomposition and the Lagrangian families."""

from __future__ import annotations

import numpy as np
import pytest

from orbidual.core.errors import ConfigurationError, DomainError, SingularBlockError
from orbidual.dynamics import (
    SigmaOperator,
    dual_sigma_blocks,
    get_lagrangian,
    lagrangian_eval,
    list_lagrangians,
    sigma_blocks,
)
from orbidual.dynamics.sigma import master_identity_residual, random_involution, swap_operator
from orbidual.groups import get_group

RNG = np.random.default_rng(5)
CARTAN = np.array([0.3, 0.0, 0.0])


def _double():
    return get_group("lu_weinstein_su2")


def _operator(double) -> SigmaOperator:
    return random_involution(double.algebra, np.random.default_rng(11))


class TestSigmaOperator:
    def test_swap_is_involution(self):
        op = swap_operator(_double().algebra)
        assert op.involution_residual == 0.0
        assert op.adjointness_residual == 0.0

    def test_random_involution_is_admissible(self):
        op = _operator(_double())
        assert op.involution_residual < 1e-10
        assert op.adjointness_residual < 1e-10

    def test_not_involutive(self):
        with pytest.raises(DomainError, match="involution"):
            SigmaOperator(2.0 * _double().algebra.psi, _double().algebra)

    def test_wrong_shape(self):
        with pytest.raises(DomainError):
            SigmaOperator(np.eye(3), _double().algebra)


class TestBlocks:
    def test_reassembly_and_symmetry(self):
        double = _double()
        rng = np.random.default_rng(12)
        worst_reassembly = worst_symmetry = 0.0
        for _ in range(100):
            op = random_involution(double.algebra, rng)
            blocks = sigma_blocks(double, op, double.n_group.exp(0.2 * rng.standard_normal(3)))
            worst_reassembly = max(worst_reassembly, blocks.reassembly_residual())
            worst_symmetry = max(worst_symmetry, blocks.symmetry_residual())
        assert worst_reassembly < 1e-10
        assert worst_symmetry < 1e-10

    def test_dual_blocks_symmetric(self):
        double = _double()
        rng = np.random.default_rng(13)
        worst = 0.0
        for _ in range(100):
            h = double.nstar_group.exp(0.2 * rng.standard_normal(3))
            worst = max(worst, dual_sigma_blocks(double, random_involution(double.algebra, rng), h).symmetry_residual())
        assert worst < 1e-10

    def test_master_identity(self):
        double = _double()
        rng = np.random.default_rng(14)
        worst = 0.0
        for _ in range(100):
            op = random_involution(double.algebra, rng)
            blocks = sigma_blocks(double, op, double.n_group.exp(0.2 * rng.standard_normal(3)))
            qdot, qprime = rng.standard_normal((2, 3))
            worst = max(worst, master_identity_residual(blocks, qdot, qprime))
        assert worst < 1e-10

    def test_singular_block(self):
        double = _double()
        identity = SigmaOperator(np.eye(6), double.algebra)
        with pytest.raises(SingularBlockError):
            sigma_blocks(double, identity, double.n_group.identity)


class TestLagrangians:
    def test_registry(self):
        assert list_lagrangians() == ["Lc0", "LcMinusAlpha", "Lsigma0", "LsigmaAlpha", "LtildeAlpha"]
        with pytest.raises(ConfigurationError, match="unknown Lagrangian"):
            get_lagrangian("Lbogus", _double())

    def test_sigma_families_invert_legendre(self):
        double = _double()
        op = _operator(double)
        g = double.n_group.exp(0.2 * RNG.standard_normal(3))
        v = RNG.standard_normal(3)
        for name in ("Lsigma0", "LsigmaAlpha"):
            family = get_lagrangian(name, double, operator=op, alpha=CARTAN)
            assert family.legendre_residual(g, v) < 1e-9, name

    def test_shift_subtracts_pairing(self):
        double = _double()
        op = _operator(double)
        g = double.n_group.exp(0.2 * RNG.standard_normal(3))
        v = RNG.standard_normal(3)
        plain = lagrangian_eval("Lsigma0", double, g, v, operator=op)
        shifted = lagrangian_eval("LsigmaAlpha", double, g, v, operator=op, alpha=CARTAN)
        assert shifted == pytest.approx(plain - v @ CARTAN)

    def test_dual_family_inverts_legendre(self):
        double = _double()
        family = get_lagrangian("LtildeAlpha", double, operator=_operator(double), alpha=CARTAN)
        h = double.nstar_group.exp(0.2 * RNG.standard_normal(3))
        assert family.legendre_residual(h, RNG.standard_normal(3)) < 1e-9

    def test_chiral_families_invert_legendre(self):
        double = _double()
        l = double.total.exp(0.3 * RNG.standard_normal(6))
        v = RNG.standard_normal(6)
        for name in ("Lc0", "LcMinusAlpha"):
            family = get_lagrangian(name, double, l2=0.5 * np.eye(6), l3=np.eye(6), alpha=CARTAN)
            assert family.legendre_residual(l, v) < 1e-9, name

    def test_singular_l3(self):
        double = _double()
        with pytest.raises(SingularBlockError):
            get_lagrangian("Lc0", double, l2=np.zeros((6, 6)), l3=np.zeros((6, 6)))
