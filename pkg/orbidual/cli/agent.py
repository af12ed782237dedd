"""Agent-friendly helper commands."""

from __future__ import annotations

import click

from orbidual.core.errors import EXIT_CODE_MAP
from orbidual.core.output import emit


@click.group("agent")
def agent_group() -> None:
    """Agent-friendly helpers (exit codes)."""


@agent_group.command("exit-codes")
@click.pass_context
def agent_exit_codes(ctx: click.Context) -> None:
    """Print stable exit codes for automation."""
    obj = ctx.obj or {}
    if obj.get("fmt") == "json":
        emit(obj, {"exit_codes": EXIT_CODE_MAP})
        return

    rows = sorted(
        ({"code": info["code"], "name": name, "description": info["description"]}
         for name, info in EXIT_CODE_MAP.items()),
        key=lambda r: (r["code"], r["name"]),
    )
    emit(obj, rows, columns=["code", "name", "description"])
