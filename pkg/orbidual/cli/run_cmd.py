"""Scenario commands: run a config, or compare a scenario's dual pair."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from orbidual.core.config import load_scenario_config
from orbidual.core.errors import EXIT_FAIL
from orbidual.core.output import emit
from orbidual.scenarios.runner import run_duality, run_scenario


def _load(ctx: click.Context, config_path: str):
    app = ctx.obj.get("app")
    default_seed = app.defaults.seed if app is not None else 0
    return load_scenario_config(Path(config_path), default_seed=default_seed)


def _numerics(ctx: click.Context):
    app = ctx.obj.get("app")
    return app.numerics if app is not None else None


@click.command("run")
@click.argument("config_path", metavar="CONFIG", type=click.Path(dir_okay=False))
@click.option("--no-write", is_flag=True, default=False, help="Score only; skip writing artifacts.")
@click.option("--progress", is_flag=True, default=False, help="Show integration progress bars on stderr.")
@click.pass_context
def run_command(ctx: click.Context, config_path: str, no_write: bool, progress: bool) -> None:
    """Run a scenario config and score it against its tolerances.

    Exits 0 when every metric is within tolerance, 1 otherwise.
    """
    obj = ctx.obj
    config = _load(ctx, config_path)
    report = run_scenario(config, write=not no_write, progress=progress, numerics=_numerics(ctx))

    if obj.get("fmt") == "json":
        emit(obj, report.to_dict())
    else:
        emit(obj, report.rows(), columns=["metric", "value", "tolerance", "ok"])
        if obj.get("fmt") == "human":
            status = "PASS" if report.passed else "FAIL"
            where = "" if no_write else f"  ({config.run_dir})"
            click.echo(f"{status} {report.scenario} seed={report.seed}{where}")

    if not report.passed:
        sys.exit(EXIT_FAIL)


@click.command("duality")
@click.argument("config_path", metavar="CONFIG", type=click.Path(dir_okay=False))
@click.option("--no-write", is_flag=True, default=False, help="Print only; skip writing duality.json.")
@click.option("--progress", is_flag=True, default=False, help="Show integration progress bars on stderr.")
@click.pass_context
def duality_command(ctx: click.Context, config_path: str, no_write: bool, progress: bool) -> None:
    """Integrate both dual spaces along one momentum curve and report the gaps."""
    config = _load(ctx, config_path)
    report = run_duality(config, write=not no_write, progress=progress, numerics=_numerics(ctx))
    data = report.to_dict()
    if ctx.obj.get("fmt") == "json":
        emit(ctx.obj, data)
    else:
        rows = [{"field": k, "value": v} for k, v in data.items()]
        emit(ctx.obj, rows, columns=["field", "value"])
