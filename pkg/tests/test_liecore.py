"""Tests for structure-constant algebras, doubles and the algebra registry."""

from __future__ import annotations

import json

import numpy as np
import pytest

from orbidual.core.errors import BialgebraError, ConfigurationError, DimensionError, DomainError
from orbidual.liecore import get_algebra, list_algebras
from orbidual.liecore.algebra import abelian, ad_star, algebra_from_dict, bracket, load_algebra
from orbidual.liecore.builtins import RigidBodyConstants
from orbidual.liecore.double import N, NSTAR, build_double, project_factor

RNG = np.random.default_rng(0)


class TestLieAlgebra:
    def test_se2_brackets(self):
        se2 = get_algebra("se2")
        j, p1, p2 = (se2.basis(i) for i in range(3))
        assert np.allclose(bracket(j, p1).coeffs, p2.coeffs)
        assert np.allclose(bracket(j, p2).coeffs, -p1.coeffs)
        assert np.allclose(bracket(p1, p2).coeffs, 0.0)

    def test_builtins_satisfy_jacobi(self):
        for name in ("se2", "su2", "an2", "rigid_body_se2"):
            residual, _ = get_algebra(name).jacobi_residual()
            assert residual < 1e-12

    def test_coadjoint_is_transposed_adjoint(self):
        alg = get_algebra("su2")
        x, y, xi = RNG.normal(size=(3, 3))
        lhs = ad_star(alg.element(x), xi) @ y
        rhs = xi @ alg.bracket_coords(x, y)
        assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_jacobi_failure_names_witness(self):
        with pytest.raises(BialgebraError) as exc:
            algebra_from_dict({"dim": 3, "structure": [[0, 1, 2, 1.0], [0, 2, 0, 1.0]]})
        assert exc.value.witness is not None
        assert exc.value.residual > 0.5

    def test_mixed_homes_rejected(self):
        a, b = get_algebra("su2"), get_algebra("an2")
        with pytest.raises(DimensionError):
            a.basis(0) + b.basis(0)

    def test_wrong_coordinate_count(self):
        with pytest.raises(DimensionError):
            get_algebra("se2").element([1.0, 2.0])

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "heisenberg.json"
        path.write_text(json.dumps({"dim": 3, "labels": ["x", "y", "z"], "structure": [[0, 1, 2, 1.0]]}))
        alg = load_algebra(path)
        assert alg.name == "heisenberg"
        assert alg.labels == ("x", "y", "z")
        assert np.allclose(alg.bracket_coords([0, 1, 0], [1, 0, 0]), [0, 0, -1])

    def test_malformed_definition(self):
        with pytest.raises(ConfigurationError):
            algebra_from_dict({"structure": []})


class TestDouble:
    def test_lu_weinstein_is_consistent(self):
        double = get_algebra("lu_weinstein")
        assert double.dim == 6
        residual, _ = double.total.jacobi_residual()
        assert residual < 1e-12
        assert double.total.invariance_residual() < 1e-12

    def test_psi_swaps_halves(self):
        double = get_algebra("lu_weinstein")
        x = RNG.normal(size=3)
        assert np.allclose(double.to_dual(double.from_n(x)), double.from_nstar(x))
        assert np.allclose(double.from_dual(double.to_dual(double.from_n(x))), double.from_n(x))

    def test_factors_are_subalgebras(self):
        double = get_algebra("lu_weinstein")
        x, y = RNG.normal(size=(2, 3))
        assert np.allclose(
            double.total.bracket_coords(double.from_n(x), double.from_n(y)),
            double.from_n(double.n_algebra.bracket_coords(x, y)),
        )
        assert np.allclose(
            double.total.bracket_coords(double.from_nstar(x), double.from_nstar(y)),
            double.from_nstar(double.nstar_algebra.bracket_coords(x, y)),
        )

    def test_projectors_split_identity(self):
        double = get_algebra("lu_weinstein")
        assert np.allclose(double.projector(N) + double.projector(NSTAR), np.eye(6))
        z = double.total.element(RNG.normal(size=6))
        assert np.allclose(project_factor(z, N, double).coeffs[3:], 0.0)

    def test_abelian_double(self):
        double = get_algebra("abelian_double", n=2)
        assert double.dim == 4
        assert np.allclose(double.total.structure, 0.0)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            build_double(abelian(2), abelian(3))

    def test_corrupted_constants_break_invariance(self):
        total = get_algebra("lu_weinstein").total
        bad = total.corrupted(0, 1, total.dim - 1, 0.25)
        residual, _ = bad.jacobi_residual()
        assert max(residual, bad.invariance_residual()) > 0.2


class TestRigidBodyConstants:
    def test_pendulum_coefficient(self):
        k = RigidBodyConstants((1.0, 2.0, 3.0))
        assert k.pendulum_coefficient == pytest.approx(0.5)
        assert k.k1 ** 2 == pytest.approx(1.5)
        assert k.k2 ** 2 == pytest.approx(6.0)

    def test_casimir(self):
        k = RigidBodyConstants((1.0, 2.0, 3.0))
        assert k.casimir([1.5, 0.0, 7.0]) == pytest.approx(0.75)

    def test_inertia_order_enforced(self):
        with pytest.raises(DomainError):
            RigidBodyConstants((3.0, 2.0, 1.0))


class TestRegistry:
    def test_builtins_listed(self):
        names = list_algebras()
        for name in ("se2", "su2", "an2", "lu_weinstein", "abelian_double"):
            assert name in names

    def test_unknown(self):
        with pytest.raises(ConfigurationError, match="unknown algebra"):
            get_algebra("e8")

    def test_chevalley_rank_one_only(self):
        assert get_algebra("chevalley").dim == 6
        with pytest.raises(DomainError):
            get_algebra("chevalley", rank=2)
