"""Tests for the orbidual command line."""

from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from orbidual.cli import cli
from orbidual.core.config import _load_toml


@pytest.fixture
def runner(tmp_path, monkeypatch):
    monkeypatch.setenv("ORBIDUAL_HOME", str(tmp_path / "home"))
    monkeypatch.delenv("ORBIDUAL_SEED", raising=False)
    return CliRunner()


def _first_json(result) -> object:
    return json.loads(result.stdout.splitlines()[0])


def _scenario_file(tmp_path, scenario: str, params: dict) -> str:
    path = tmp_path / f"{scenario}.json"
    path.write_text(json.dumps({
        "config_version": 1, "scenario": scenario, "params": params, "output_dir": str(tmp_path / "out"),
    }))
    return str(path)


class TestDiscovery:
    def test_list_scenarios_json(self, runner):
        result = runner.invoke(cli, ["--json", "list-scenarios"])
        assert result.exit_code == 0
        data = _first_json(result)
        assert isinstance(data, list)
        names = {entry["scenario"] for entry in data}
        assert {"rigidbody-pendulum", "lu-weinstein-su2", "monodromic-string"} <= names

    def test_list_scenarios_plain(self, runner):
        result = runner.invoke(cli, ["--plain", "list-scenarios"])
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "name\tduality\tsummary"

    def test_schema(self, runner):
        result = runner.invoke(cli, ["--json", "schema", "rigidbody-pendulum"])
        assert result.exit_code == 0
        schema = _first_json(result)
        assert schema["params"]["dt"]["default"] == 1e-3
        assert schema["duality"] is True

    def test_unknown_scenario_exit_code(self, runner):
        result = runner.invoke(cli, ["--json", "schema", "nope"])
        assert result.exit_code == 2
        assert _first_json(result)["code"] == "UNKNOWN_SCENARIO"

    def test_json_and_plain_conflict(self, runner):
        result = runner.invoke(cli, ["--json", "--plain", "list-scenarios"])
        assert result.exit_code == 2

    def test_exit_codes(self, runner):
        result = runner.invoke(cli, ["--json", "agent", "exit-codes"])
        assert result.exit_code == 0
        codes = _first_json(result)["exit_codes"]
        assert codes["CONFIG_ERROR"]["code"] == 2
        assert codes["CANCELLED"]["code"] == 130


class TestRun:
    def test_short_run_passes(self, runner, tmp_path):
        path = _scenario_file(tmp_path, "rigidbody-pendulum", {"T": 0.1, "dt": 1e-3})
        result = runner.invoke(cli, ["--json", "run", path, "--no-write"])
        assert result.exit_code == 0, result.output
        assert _first_json(result)["pass"] is True

    def test_human_summary_line(self, runner, tmp_path):
        path = _scenario_file(tmp_path, "rigidbody-pendulum", {"T": 0.05, "dt": 1e-3})
        result = runner.invoke(cli, ["run", path])
        assert result.exit_code == 0, result.output
        assert "PASS rigidbody-pendulum seed=0" in result.stdout
        assert (tmp_path / "out" / "rigidbody-pendulum" / "report.json").exists()

    def test_bad_config_exit_code(self, runner, tmp_path):
        path = _scenario_file(tmp_path, "rigidbody-pendulum", {"dt": -1})
        result = runner.invoke(cli, ["--json", "run", path])
        assert result.exit_code == 2
        error = _first_json(result)
        assert error["code"] == "CONFIG_ERROR"
        assert error["schema"]["scenario"] == "rigidbody-pendulum"

    def test_missing_config_file(self, runner, tmp_path):
        result = runner.invoke(cli, ["run", str(tmp_path / "missing.json")])
        assert result.exit_code == 2

    def test_duality_command(self, runner, tmp_path):
        path = _scenario_file(tmp_path, "rigidbody-pendulum", {"T": 0.05, "dt": 1e-3})
        result = runner.invoke(cli, ["--json", "duality", path, "--no-write"])
        assert result.exit_code == 0, result.output
        data = _first_json(result)
        assert data["scenario"] == "rigidbody-pendulum"
        assert data["residual_A"] < 1e-6

    def test_select_fields(self, runner, tmp_path):
        path = _scenario_file(tmp_path, "rigidbody-pendulum", {"T": 0.05, "dt": 1e-3})
        result = runner.invoke(cli, ["--json", "--select", "pass,seed", "run", path, "--no-write"])
        assert result.exit_code == 0
        assert _first_json(result) == {"pass": True, "seed": 0}


class TestCheck:
    def test_filtered_check(self, runner):
        result = runner.invoke(cli, ["--json", "check", "liecore", "--samples", "2"])
        assert result.exit_code == 0
        data = _first_json(result)
        assert data["suites"] == ["liecore"]
        assert data["failed"] == 0

    def test_corrupted_constants_fail(self, runner):
        result = runner.invoke(cli, ["--json", "check", "liecore", "--corrupt"])
        assert result.exit_code == 1

    def test_unknown_filter(self, runner):
        result = runner.invoke(cli, ["check", "nothing"])
        assert result.exit_code == 2


class TestConfigCommands:
    def test_init_set_get(self, runner, tmp_path):
        assert runner.invoke(cli, ["config", "init"]).exit_code == 0
        assert (tmp_path / "home" / "config.toml").exists()
        result = runner.invoke(cli, ["--json", "config", "set", "band", "4"])
        assert result.exit_code == 0
        result = runner.invoke(cli, ["--json", "config", "get", "band"])
        assert _first_json(result) == {"key": "band", "value": 4}

    def test_invalid_value_rolled_back(self, runner, tmp_path):
        runner.invoke(cli, ["config", "init"])
        result = runner.invoke(cli, ["config", "set", "output", "xml"])
        assert result.exit_code == 2
        assert _load_toml(tmp_path / "home" / "config.toml")["defaults"]["output"] == "human"

    def test_unknown_key(self, runner):
        result = runner.invoke(cli, ["config", "get", "colour"])
        assert result.exit_code == 2

    def test_default_output_from_config(self, runner):
        runner.invoke(cli, ["config", "init"])
        runner.invoke(cli, ["config", "set", "output", "json"])
        result = runner.invoke(cli, ["config", "path"])
        assert "config.toml" in _first_json(result)["path"]

    def test_plugin_include(self, runner, tmp_path, monkeypatch):
        (tmp_path / "orbidual_cli_plugin.py").write_text(
            "from orbidual.scenarios import ScenarioOutcome, register_scenario\n\n"
            "@register_scenario('cli-plugin', defaults={'x': 1.0})\n"
            "def run(ctx):\n"
            "    return ScenarioOutcome({'x': ctx.params['x']})\n"
        )
        monkeypatch.syspath_prepend(str(tmp_path))
        runner.invoke(cli, ["config", "init"])
        assert runner.invoke(cli, ["config", "set", "include", "orbidual_cli_plugin"]).exit_code == 0
        result = runner.invoke(cli, ["--json", "list-scenarios"])
        assert "cli-plugin" in {entry["scenario"] for entry in _first_json(result)}
