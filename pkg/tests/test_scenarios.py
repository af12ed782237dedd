"""Tests for the scenario registry, the runner and the invariant check suites."""

from __future__ import annotations

import csv
import json
import math

import pytest

from orbidual.checks import list_suites, run_checks, select_suites
from orbidual.core.config import Numerics, parse_scenario_config
from orbidual.core.errors import ConfigurationError, DomainError, UnknownScenarioError
from orbidual.scenarios import (
    ScenarioOutcome,
    get_scenario,
    list_scenarios,
    load_includes,
    register_duality,
    register_scenario,
)
from orbidual.scenarios.report import ResidualReport
from orbidual.scenarios.runner import resolve_params, run_duality, run_scenario


def _config(scenario: str, params: dict, tmp_path, seed: int = 0):
    return parse_scenario_config({
        "config_version": 1, "scenario": scenario, "params": params,
        "output_dir": str(tmp_path), "seed": seed,
    })


class TestResidualReport:
    def test_pass_within_tolerance(self):
        report = ResidualReport("s", {"a": 1e-9, "info": 5.0}, {"a": 1e-8})
        assert report.passed
        assert report.failures == []

    def test_untoleranced_metric_is_informational(self):
        rows = {r["metric"]: r for r in ResidualReport("s", {"a": 0.0, "info": 5.0}, {"a": 1.0}).rows()}
        assert rows["info"]["ok"] == ""
        assert rows["a"]["ok"] is True

    def test_nan_and_missing_fail(self):
        report = ResidualReport("s", {"a": math.nan}, {"a": 1.0, "b": 1.0})
        assert report.failures == ["a", "b"]
        assert report.to_dict()["pass"] is False


class TestRegistry:
    def test_builtins(self):
        assert {"rigidbody-pendulum", "lu-weinstein-su2", "monodromic-string"} <= set(list_scenarios())
        assert get_scenario("rigidbody-pendulum").duality is not None
        assert get_scenario("monodromic-string").duality is None

    def test_unknown_scenario(self):
        with pytest.raises(UnknownScenarioError, match="Unknown scenario"):
            get_scenario("nope")

    def test_schema_types(self):
        schema = get_scenario("monodromic-string").schema()
        assert schema["params"]["samples"]["type"] == "integer"
        assert schema["params"]["alpha"]["type"] == "array"
        assert schema["params"]["T"]["type"] == "number"
        assert schema["duality"] is False

    def test_duality_needs_registered_scenario(self):
        with pytest.raises(ConfigurationError):
            register_duality("never-registered")(lambda ctx: None)

    def test_plugin_include(self, tmp_path, monkeypatch):
        (tmp_path / "orbidual_demo_plugin.py").write_text(
            "from orbidual.scenarios import ScenarioOutcome, register_scenario\n\n"
            "@register_scenario('demo-plugin', defaults={'x': 1.0}, tolerances={'x': 2.0})\n"
            "def demo(ctx):\n"
            "    \"\"\"Echo x back as a metric.\"\"\"\n"
            "    return ScenarioOutcome({'x': ctx.params['x']})\n"
        )
        monkeypatch.syspath_prepend(str(tmp_path))
        assert load_includes(["orbidual_demo_plugin"]) == ["orbidual_demo_plugin"]
        scenario = get_scenario("demo-plugin")
        assert scenario.summary == "Echo x back as a metric."

    def test_missing_plugin(self):
        with pytest.raises(ConfigurationError, match="cannot import"):
            load_includes(["orbidual_no_such_plugin"])


@register_scenario("test-failing", defaults={"value": 1.0}, tolerances={"value": 0.5})
def _failing(ctx):
    return ScenarioOutcome({"value": ctx.params["value"]}, info={"seed": ctx.seed})


class TestRunner:
    def test_rigid_body_short_run_writes_artifacts(self, tmp_path):
        config = _config("rigidbody-pendulum", {"T": 0.2, "dt": 1e-3}, tmp_path, seed=4)
        report = run_scenario(config)
        assert report.passed, report.failures
        run_dir = tmp_path / "rigidbody-pendulum"
        data = json.loads((run_dir / "report.json").read_text())
        assert data["pass"] is True
        assert data["seed"] == 4
        with open(run_dir / "rigid_body.csv") as f:
            header = next(csv.reader(f))
        assert header[:4] == ["t", "beta_1", "beta_2", "beta_3"]
        assert header[4] == "g00"
        assert (run_dir / "pendulum.csv").exists()

    def test_no_write(self, tmp_path):
        run_scenario(_config("rigidbody-pendulum", {"T": 0.05, "dt": 1e-2}, tmp_path), write=False)
        assert not (tmp_path / "rigidbody-pendulum").exists()

    def test_failure_reported(self, tmp_path):
        report = run_scenario(_config("test-failing", {}, tmp_path), write=False)
        assert not report.passed
        assert report.failures == ["value"]
        assert run_scenario(_config("test-failing", {"value": 0.1}, tmp_path), write=False).passed

    def test_root_alpha_failure_is_detected(self, tmp_path):
        params = {"alpha": [0.0, 0.3, 0.0]}
        report = run_scenario(_config("lu-weinstein-su2", params, tmp_path), write=False)
        assert report.passed
        assert report.info["expected_failure"] is True
        assert "residual_A" in report.info["skipped"]
        assert report.metrics["poisson_residual"] > 1e-3

    def test_duality_short_run(self, tmp_path):
        report = run_duality(_config("rigidbody-pendulum", {"T": 0.1, "dt": 1e-3}, tmp_path))
        assert report.within(1e-6)
        assert (tmp_path / "rigidbody-pendulum" / "duality.json").exists()

    def test_numerics_fill_loop_defaults(self):
        scenario = get_scenario("monodromic-string")
        params, _ = resolve_params(scenario, {}, Numerics(samples=32, band=4))
        assert (params["samples"], params["band"]) == (32, 4)
        params, _ = resolve_params(scenario, {"band": 6}, Numerics(samples=32, band=4))
        assert params["band"] == 6
        params, _ = resolve_params(get_scenario("rigidbody-pendulum"), {}, Numerics(samples=32))
        assert "samples" not in params

    def test_duality_without_pair(self, tmp_path):
        with pytest.raises(DomainError, match="dual pair"):
            run_duality(_config("monodromic-string", {}, tmp_path), write=False)


class TestChecks:
    def test_suites_registered_in_order(self):
        assert list_suites() == ["liecore", "groups", "extension", "hamspaces", "dynamics", "loopx"]

    def test_filter(self):
        assert select_suites("ext, loop") == ["extension", "loopx"]
        with pytest.raises(ConfigurationError, match="no check suite"):
            select_suites("nothing")

    def test_liecore_suite_passes(self):
        summary = run_checks("liecore", samples=3)
        assert summary.passed
        assert summary.to_dict()["failed"] == 0

    def test_extension_suite_passes(self):
        assert run_checks("extension", samples=3).passed

    def test_corruption_is_caught(self):
        summary = run_checks("liecore", samples=3, corrupt=True)
        assert not summary.passed
        assert summary.failures[0].suite == "liecore"
