"""Tests for collective flows and the shared-curve duality engine."""

from __future__ import annotations

import numpy as np
import pytest

from orbidual.core.errors import BlowUpError, DomainError, PreconditionError
from orbidual.dynamics import CollectiveHamiltonian, duality_run, lie_poisson_flow, reconstruct_group_curve
from orbidual.dynamics.flows import Trajectory, time_grid
from orbidual.dynamics.hamiltonians import rigid_body_hamiltonian, sigma_hamiltonian, zero_hamiltonian
from orbidual.extension.cocycle import CoboundaryCocycle, ExtendedDual, ZeroCocycle
from orbidual.groups import get_group
from orbidual.hamspaces.simple import CotangentGroup, OrbitChartSpace
from orbidual.liecore.builtins import RigidBodyConstants
from orbidual.scenarios.rigidbody import pendulum_residual

INERTIA = (1.0, 2.0, 3.0)
BETA0 = np.array([0.8, 0.3, 0.5])


def _rigid_body():
    constants = RigidBodyConstants(INERTIA)
    return get_group("rigid_body_se2", inertia=INERTIA), constants, rigid_body_hamiltonian(constants)


class TestTimeGrid:
    def test_uniform(self):
        times, step = time_grid(1.0, 0.25)
        assert np.allclose(times, [0.0, 0.25, 0.5, 0.75, 1.0])
        assert step == pytest.approx(0.25)

    def test_zero_horizon(self):
        times, _ = time_grid(0.0, 0.1)
        assert np.allclose(times, [0.0])

    def test_bad_step(self):
        with pytest.raises(DomainError):
            time_grid(1.0, 0.0)
        with pytest.raises(DomainError):
            time_grid(-1.0, 0.1)

    def test_trajectory_lengths_checked(self):
        with pytest.raises(DomainError):
            Trajectory(np.zeros(3), [1, 2])


class TestCollectiveHamiltonian:
    def test_quadratic(self):
        h = CollectiveHamiltonian(np.diag([1.0, 2.0]))
        assert h.form == "quadratic"
        assert h([1.0, 1.0]) == pytest.approx(1.5)
        assert np.allclose(h.gradient([1.0, 1.0]), [1.0, 2.0])

    def test_asymmetric_rejected(self):
        with pytest.raises(DomainError, match="symmetric"):
            CollectiveHamiltonian(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_custom_needs_gradient(self):
        with pytest.raises(DomainError):
            CollectiveHamiltonian(func=lambda xi: 0.0)

    def test_zero_and_sigma(self):
        assert zero_hamiltonian(3)(np.ones(3)) == 0.0
        pairing = np.block([[np.zeros((2, 2)), np.eye(2)], [np.eye(2), np.zeros((2, 2))]])
        h = sigma_hamiltonian(pairing, pairing)
        xi = np.array([1.0, 2.0, 3.0, 4.0])
        assert h(xi) == pytest.approx(0.5 * xi @ xi)

    def test_rigid_body_form(self):
        _, constants, h = _rigid_body()
        assert h([5.0, 1.0, 2.0]) == pytest.approx(0.5 * (constants.n2 + 4.0))


class TestLiePoissonFlow:
    def test_energy_and_casimir_conserved(self):
        group, constants, h = _rigid_body()
        traj = lie_poisson_flow(h, ZeroCocycle(group), ExtendedDual(BETA0, 1.0), 1.0, 1e-2)
        values = traj.values()
        energies = np.array([h(v) for v in values])
        casimirs = np.array([constants.casimir(v) for v in values])
        assert len(traj) == 101
        assert np.abs(energies - energies[0]).max() < 1e-8
        assert np.abs(casimirs - casimirs[0]).max() < 1e-8

    def test_energy_conserved_with_cocycle(self):
        group, _, h = _rigid_body()
        cocycle = CoboundaryCocycle(group, np.array([0.2, -0.4, 0.1]))
        traj = lie_poisson_flow(h, cocycle, ExtendedDual(BETA0, 1.0), 1.0, 1e-2)
        energies = np.array([h(v) for v in traj.values()])
        assert np.abs(energies - energies[0]).max() < 1e-8
        assert all(s.b == 1.0 for s in traj.states)

    def test_blow_up_reported(self):
        group, _, _ = _rigid_body()
        h = CollectiveHamiltonian(func=lambda xi: 0.0, grad=lambda xi: np.full(3, 1e16))
        cocycle = CoboundaryCocycle(group, np.ones(3))
        with pytest.raises(BlowUpError) as exc:
            lie_poisson_flow(h, cocycle, ExtendedDual(BETA0, 1.0), 1.0, 0.1)
        assert exc.value.time > 0

    def test_group_curve_starts_at_identity(self):
        group, _, h = _rigid_body()
        traj = reconstruct_group_curve(h, lie_poisson_flow(h, ZeroCocycle(group), ExtendedDual(BETA0), 0.5, 1e-2), group)
        assert traj.group_curve is not None
        assert np.allclose(traj.group_curve[0], group.identity)
        assert max(group.membership_residual(g) for g in traj.group_curve) < 1e-8


class TestDualityRun:
    def _spaces(self):
        group, constants, h = _rigid_body()
        body = CotangentGroup(group)
        chart = OrbitChartSpace(group, constants, constants.casimir(BETA0))
        return body, chart, h

    def test_short_run_agrees_with_direct_integration(self):
        body, chart, h = self._spaces()
        report = duality_run(body, body.point(body.base_group.identity, BETA0), chart, chart.from_beta(BETA0),
                             h, 0.2, 1e-3, scenario="rigid")
        assert report.within(1e-6)
        assert report.momentum_drift < 1e-8
        assert report.energy_drift < 1e-10
        assert set(report.to_dict()) == {
            "scenario", "T", "dt", "residual_A", "residual_B", "momentum_drift", "energy_drift",
        }
        assert len(report.trajectory_A) == len(report.trajectory_B) == 201

    def test_without_direct_oracle(self):
        body, chart, h = self._spaces()
        report = duality_run(body, body.point(body.base_group.identity, BETA0), chart, chart.from_beta(BETA0),
                             h, 0.05, 1e-2, direct=False)
        assert report.residual_A == report.residual_B == 0.0

    def test_mismatched_momenta(self):
        body, chart, h = self._spaces()
        other = np.array([-0.8, -0.3, 0.5])
        with pytest.raises(PreconditionError) as exc:
            duality_run(body, body.point(body.base_group.identity, BETA0), chart, chart.from_beta(other), h, 0.1, 1e-2)
        assert exc.value.momentum_a is not None


class TestPendulumResidual:
    def test_rest_point(self):
        constants = RigidBodyConstants(INERTIA)
        assert pendulum_residual(np.zeros(10), 0.1, constants, 1.0) == 0.0

    def test_short_series(self):
        assert pendulum_residual(np.zeros(2), 0.1, RigidBodyConstants(INERTIA), 1.0) == 0.0
