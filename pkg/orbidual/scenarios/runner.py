"""Run registered scenarios from a :class:`~orbidual.core.config.ScenarioConfig`."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any

import numpy as np

from orbidual.core.artifacts import write_json, write_loop_snapshot, write_spectral_csv, write_trajectory_csv
from orbidual.core.config import Numerics, ScenarioConfig
from orbidual.core.errors import ConfigurationError, DomainError
from orbidual.dynamics.duality import DualityReport, duality_run
from orbidual.scenarios import Scenario, ScenarioContext, ScenarioOutcome, get_scenario
from orbidual.scenarios.report import ResidualReport

log = logging.getLogger("orbidual.scenarios")

_POSITIVE = ("T", "dt")
_NUMERIC_DEFAULTS = ("samples", "band")


def _coerce(scenario: Scenario, key: str, value: Any, default: Any) -> Any:
    schema = scenario.schema()
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigurationError(f"params.{key} must be a boolean", schema=schema)
        return value
    if isinstance(default, (int, float)):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigurationError(f"params.{key} must be a number", schema=schema)
        if isinstance(default, int) and not isinstance(default, bool):
            if isinstance(value, float) and not value.is_integer():
                raise ConfigurationError(f"params.{key} must be an integer", schema=schema)
            return int(value)
        return float(value)
    if isinstance(default, (list, tuple)):
        if not isinstance(value, (list, tuple)) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
        ):
            raise ConfigurationError(f"params.{key} must be an array of numbers", schema=schema)
        if default and len(value) != len(default):
            raise ConfigurationError(f"params.{key} needs {len(default)} entries, got {len(value)}", schema=schema)
        return [float(v) for v in value]
    if isinstance(default, str) and not isinstance(value, str):
        raise ConfigurationError(f"params.{key} must be a string", schema=schema)
    return value


def resolve_params(
    scenario: Scenario, raw: dict[str, Any], numerics: Numerics | None = None,
) -> tuple[dict[str, Any], dict[str, float]]:
    """Defaults overridden key by key; ``tolerances`` overrides tolerance entries.

    ``numerics`` from config.toml replaces the scenario default for
    ``samples`` and ``band`` when the scenario declares them.
    """
    schema = scenario.schema()
    raw = dict(raw)
    overrides = raw.pop("tolerances", None) or {}
    unknown = sorted(set(raw) - set(scenario.defaults))
    if unknown:
        raise ConfigurationError(f"Unknown params for {scenario.name}: {', '.join(unknown)}", schema=schema)
    params = dict(scenario.defaults)
    if numerics is not None:
        for key in _NUMERIC_DEFAULTS:
            if key in params:
                params[key] = getattr(numerics, key)
    for key, value in raw.items():
        params[key] = _coerce(scenario, key, value, scenario.defaults[key])
    for key in _POSITIVE:
        if key in params and not params[key] > 0:
            raise ConfigurationError(f"params.{key} must be > 0, got {params[key]}", schema=schema)

    if not isinstance(overrides, dict):
        raise ConfigurationError("params.tolerances must be a mapping", schema=schema)
    tolerances = dict(scenario.tolerances)
    for key, value in overrides.items():
        if key not in tolerances:
            raise ConfigurationError(f"Unknown tolerance {key!r} for {scenario.name}", schema=schema)
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
            raise ConfigurationError(f"tolerance {key!r} must be a positive number", schema=schema)
        tolerances[key] = float(value)
    return params, tolerances


def _context(
    config: ScenarioConfig, params: dict[str, Any], progress: bool, numerics: Numerics | None,
) -> ScenarioContext:
    return ScenarioContext(
        params, np.random.default_rng(config.seed), seed=config.seed, progress=progress,
        numerics=numerics or Numerics(),
    )


def write_outcome(run_dir: Path, report: ResidualReport, outcome: ScenarioOutcome) -> list[Path]:
    written = [write_json(run_dir / "report.json", report.to_dict())]
    for traj in outcome.trajectories:
        written.append(write_trajectory_csv(
            run_dir / f"{traj.name}.csv", traj.times, traj.states,
            state_labels=traj.labels, group_curve=traj.group_curve,
        ))
    for name, samples in outcome.loops.items():
        written.append(write_loop_snapshot(run_dir / f"{name}.json", samples))
    for name, (coeffs, band) in outcome.spectra.items():
        written.append(write_spectral_csv(run_dir / f"{name}.csv", coeffs, band))
    return written


def run_scenario(
    config: ScenarioConfig, *, write: bool = True, progress: bool = False, numerics: Numerics | None = None,
) -> ResidualReport:
    """Run, score and (optionally) write ``output_dir/<scenario>/``."""
    scenario = get_scenario(config.scenario)
    params, tolerances = resolve_params(scenario, config.params, numerics)
    log.debug("running %s with seed %d", scenario.name, config.seed)
    outcome = scenario.run(_context(config, params, progress, numerics))
    info = dict(outcome.info)
    if outcome.skipped:
        info["skipped"] = sorted(outcome.skipped)
        tolerances = {k: v for k, v in tolerances.items() if k not in outcome.skipped}
    report = ResidualReport(scenario.name, dict(outcome.metrics), tolerances, info, config.seed)
    if write:
        written = write_outcome(config.run_dir, report, outcome)
        log.debug("%s: wrote %d artifacts to %s", scenario.name, len(written), config.run_dir)
    if not report.passed:
        log.info("%s failed: %s", scenario.name, ", ".join(report.failures))
    return report


def run_duality(
    config: ScenarioConfig, *, write: bool = True, progress: bool = False, numerics: Numerics | None = None,
) -> DualityReport:
    """Shared-curve vs direct integration for a scenario's pair of dual spaces."""
    scenario = get_scenario(config.scenario)
    if scenario.duality is None:
        raise DomainError(f"scenario {scenario.name!r} does not define a dual pair")
    params, _ = resolve_params(scenario, config.params, numerics)
    setup = scenario.duality(_context(config, params, progress, numerics))
    report = duality_run(
        setup.space_a, setup.p0_a, setup.space_b, setup.p0_b, setup.hamiltonian,
        setup.T, setup.dt, scenario=scenario.name, progress=progress,
        fd_step=(numerics or Numerics()).fd_step,
    )
    if write:
        write_json(config.run_dir / "duality.json", report.to_dict())
    return report
