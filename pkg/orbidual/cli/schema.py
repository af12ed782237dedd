"""Scenario registry discovery: names, summaries and parameter schemas."""

from __future__ import annotations

import click

from orbidual.core.output import emit
from orbidual.scenarios import get_scenario, list_scenarios


@click.command("list-scenarios")
@click.pass_context
def list_scenarios_command(ctx: click.Context) -> None:
    """List registered scenarios. With --json, a JSON array of schemas."""
    obj = ctx.obj
    scenarios = [get_scenario(name) for name in list_scenarios()]
    if obj.get("fmt") == "json":
        emit(obj, [dict(s.schema(), summary=s.summary) for s in scenarios])
        return
    rows = [
        {"name": s.name, "duality": s.duality is not None, "summary": s.summary}
        for s in scenarios
    ]
    emit(obj, rows, columns=["name", "duality", "summary"])


@click.command("schema")
@click.argument("name")
@click.pass_context
def schema_command(ctx: click.Context, name: str) -> None:
    """Show parameter defaults, types and tolerances for scenario NAME."""
    obj = ctx.obj
    schema = get_scenario(name).schema()
    if obj.get("fmt") == "json":
        emit(obj, schema)
        return
    rows = [
        {"param": key, "type": entry["type"], "default": entry["default"]}
        for key, entry in schema["params"].items()
    ]
    rows += [
        {"param": f"tolerances.{key}", "type": "number", "default": value}
        for key, value in schema["tolerances"].items()
    ]
    emit(obj, rows, columns=["param", "type", "default"])
