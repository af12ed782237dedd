"""Tests for Hamiltonian H-spaces and their residual diagnostics."""

from __future__ import annotations

import numpy as np
import pytest

from orbidual.core.errors import ConditionError, DimensionError, DomainError, TagCombinationError
from orbidual.extension.cocycle import CoboundaryCocycle, coadjoint_matrix
from orbidual.extension.poisson import LinearObservable
from orbidual.groups import get_group
from orbidual.hamspaces import (
    ChiralSpace,
    CotangentGroup,
    CotangentN,
    CotangentNstar,
    OrbitChartSpace,
    ReducedOrbitSpace,
)
from orbidual.hamspaces.diagnostics import (
    action_law_residual,
    closedness_residual,
    dualizable_residual,
    equivariance_residual,
    momentum_map_residual,
    null_direction_residual,
    poisson_map_residual,
    stabilizer_basis,
)
from orbidual.liecore.builtins import RigidBodyConstants

RNG = np.random.default_rng(3)
CARTAN = np.array([0.3, 0.0, 0.0])
ROOT = np.array([0.0, 0.3, 0.0])


def _double():
    return get_group("lu_weinstein_su2")


def _random_point(space, scale: float = 0.4):
    base = space.base_group.exp(scale * RNG.standard_normal(space.base_group.algebra.dim))
    return space.point(base, RNG.standard_normal(space.fiber_dim))


def _random_acting(space, scale: float = 0.4) -> np.ndarray:
    return space.acting_group.exp(scale * RNG.standard_normal(space.acting_group.algebra.dim))


def _spaces() -> dict:
    double = _double()
    return {
        "tn": CotangentN(double, alpha=CARTAN),
        "tn_alpha": CotangentN(double, alpha=CARTAN, action="dhatAlpha", momentum="mu0alpha"),
        "tn_shifted": CotangentN(double, alpha=CARTAN, symplectic="alpha_shifted", action="dhatAlpha",
                                 momentum="mualphaalpha"),
        "tns": CotangentNstar(double, alpha=CARTAN),
        "tns_alpha": CotangentNstar(double, alpha=CARTAN, momentum="mutildealpha"),
        "chiral": ChiralSpace(double.total),
        "tg": CotangentGroup(get_group("rigid_body_se2")),
    }


class TestEquivariance:
    def test_momentum_maps_are_equivariant(self):
        for name, space in _spaces().items():
            for _ in range(3):
                residual = equivariance_residual(space, _random_acting(space), _random_point(space))
                assert residual < 1e-9, name

    def test_actions_compose(self):
        for name, space in _spaces().items():
            point = _random_point(space)
            residual = action_law_residual(space, _random_acting(space), _random_acting(space), point)
            assert residual < 1e-9, name

    def test_momentum_generates_action(self):
        for name, space in _spaces().items():
            z = RNG.standard_normal(space.acting_group.algebra.dim)
            assert momentum_map_residual(space, _random_point(space), z) < 1e-5, name


class TestPoissonProperty:
    def test_cotangent_n_with_cartan_shift(self):
        space = CotangentN(_double(), alpha=CARTAN, action="dhatAlpha", momentum="mu0alpha")
        point = _random_point(space)
        basis = np.eye(6)
        for i, j in ((0, 1), (1, 4), (2, 5)):
            residual = poisson_map_residual(space, point, LinearObservable(basis[i]), LinearObservable(basis[j]))
            assert residual < 1e-6

    def test_chiral_is_anti_poisson(self):
        space = ChiralSpace(get_group("rigid_body_se2"))
        assert space.polarity == -1
        point = _random_point(space)
        basis = np.eye(3)
        residual = poisson_map_residual(space, point, LinearObservable(basis[0]), LinearObservable(basis[2]))
        assert residual < 1e-6


class TestTags:
    def test_undefined_combination(self):
        with pytest.raises(TagCombinationError):
            CotangentN(_double(), alpha=CARTAN, symplectic="alpha_shifted", action="dhat0", momentum="mu00")

    def test_root_shift_rejected(self):
        with pytest.raises(ConditionError):
            CotangentN(_double(), alpha=ROOT, action="dhatAlpha", momentum="mu0alpha")
        with pytest.raises(ConditionError):
            CotangentNstar(_double(), alpha=ROOT)

    def test_root_shift_allowed_when_not_enforced(self):
        space = CotangentN(_double(), alpha=ROOT, action="dhatAlpha", momentum="mu0alpha", enforce_condition=False)
        assert space.tags()["momentum"] == "mu0alpha"

    def test_tangent_length_checked(self):
        space = CotangentN(_double(), alpha=CARTAN)
        with pytest.raises(DimensionError):
            space.symplectic_eval(space.point(), np.zeros(3), np.zeros(6))


class TestChiral:
    def test_closed_form_matches_hamiltonian_vector(self):
        group = get_group("rigid_body_se2")
        space = ChiralSpace(group, CoboundaryCocycle(group, np.array([0.4, -0.2, 1.0])))
        point = _random_point(space)
        dh = RNG.standard_normal(space.dim)
        assert np.allclose(space.hamiltonian_vector(point, dh), space.equations_of_motion(point, dh), atol=1e-10)

    def test_coordinates(self):
        space = ChiralSpace(get_group("se2"))
        assert space.coordinate_labels() == ["eta_1", "eta_2", "eta_3"]
        assert space.dim == 6


class TestOrbitChart:
    def _space(self):
        constants = RigidBodyConstants((1.0, 2.0, 3.0))
        beta0 = np.array([0.8, 0.3, 0.5])
        return OrbitChartSpace(get_group("rigid_body_se2"), constants, constants.casimir(beta0)), beta0

    def test_beta_roundtrip(self):
        space, beta0 = self._space()
        assert np.allclose(space.to_beta(space.from_beta(beta0)), beta0)

    def test_action_is_coadjoint(self):
        space, beta0 = self._space()
        point = space.from_beta(beta0)
        l = space.acting_group.exp(0.3 * RNG.standard_normal(3))
        expected = coadjoint_matrix(space.acting_group, l) @ beta0
        assert np.allclose(space.to_beta(space.act(l, point)), expected, atol=1e-10)

    def test_nonpositive_casimir(self):
        with pytest.raises(DomainError):
            OrbitChartSpace(get_group("rigid_body_se2"), RigidBodyConstants((1.0, 2.0, 3.0)), 0.0)


class TestReducedOrbit:
    def test_anchor_at_identity(self):
        double = _double()
        space = ReducedOrbitSpace(double, alpha=CARTAN)
        assert np.allclose(space.momentum(space.point()).xi, space.orbit_anchor().xi)

    def test_both_momenta_equivariant(self):
        double = _double()
        for momentum in ("Phi_c0", "Phi_cminusalpha"):
            space = ReducedOrbitSpace(double, alpha=CARTAN, momentum=momentum)
            assert equivariance_residual(space, _random_acting(space), _random_point(space)) < 1e-9


class TestOrbitDiagnostics:
    def test_point_on_orbit_is_dualizable(self):
        double = _double()
        space = CotangentN(double, alpha=CARTAN)
        l = double.total.exp(0.4 * RNG.standard_normal(6))
        point = space.act(l, space.point(fiber=CARTAN))
        report = dualizable_residual(space, point, space.orbit_anchor(), hint=l)
        assert report.member
        assert null_direction_residual(space, point, space.orbit_anchor(), report.witness) < 1e-6

    def test_point_off_orbit(self):
        space = CotangentN(_double(), alpha=CARTAN)
        report = dualizable_residual(space, space.point(), space.orbit_anchor(), max_nfev=20)
        assert not report.member

    def test_stabilizer_of_cartan_anchor(self):
        space = CotangentN(_double(), alpha=CARTAN)
        assert stabilizer_basis(space, space.orbit_anchor()).shape == (6, 2)

    def test_canonical_form_is_closed(self):
        space = CotangentN(_double(), alpha=CARTAN)
        point = _random_point(space)
        t1, t2, t3 = RNG.standard_normal((3, space.dim))
        assert closedness_residual(space, point, t1, t2, t3) < 1e-7
