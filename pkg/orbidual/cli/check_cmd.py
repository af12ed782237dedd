"""Invariant check matrix."""

from __future__ import annotations

import sys

import click

from orbidual.checks import run_checks
from orbidual.core.errors import EXIT_FAIL
from orbidual.core.output import emit


@click.command("check")
@click.argument("filter", required=False, default=None)
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for sampled elements.")
@click.option("--samples", type=click.IntRange(min=1), default=20, show_default=True, help="Random samples per check.")
@click.option("--progress", is_flag=True, default=False, help="Show a progress bar on stderr.")
@click.option("--corrupt", is_flag=True, default=False, hidden=True, help="Perturb built-in structure constants.")
@click.pass_context
def check_command(
    ctx: click.Context,
    filter: str | None,
    seed: int,
    samples: int,
    progress: bool,
    corrupt: bool,
) -> None:
    """Run invariant suites (liecore, groups, extension, hamspaces, dynamics, loopx).

    FILTER is a comma-separated list of suite name prefixes.
    """
    obj = ctx.obj
    summary = run_checks(filter, seed=seed, samples=samples, corrupt=corrupt, progress=progress)

    if obj.get("fmt") == "json":
        emit(obj, summary.to_dict())
    else:
        rows = [r.to_dict() for r in summary.results]
        emit(obj, rows, columns=["suite", "check", "residual", "tolerance", "pass"])
        if obj.get("fmt") == "human":
            click.echo(f"{len(summary.results) - len(summary.failures)}/{len(summary.results)} checks passed")

    if not summary.passed:
        sys.exit(EXIT_FAIL)
