"""Config management commands: init, path, show, get, set."""

from __future__ import annotations

from typing import Any

import click

from orbidual.core.config import _load_toml, _save_toml, get_config_dir, load_app_config
from orbidual.core.errors import ConfigurationError
from orbidual.core.output import emit

# Documented config keys with their TOML section + key + description.
_KNOWN_KEYS: dict[str, tuple[str, str, str]] = {
    "output": ("defaults", "output", "Default output mode: human | json | plain"),
    "seed": ("defaults", "seed", "Seed used when a scenario config sets none"),
    "fd_step": ("numerics", "fd_step", "Finite-difference step for the direct-integration oracle"),
    "samples": ("numerics", "samples", "Collocation points per loop (P)"),
    "band": ("numerics", "band", "Fourier band limit for loop truncation (N_max)"),
    "conditioning_bound": ("numerics", "conditioning_bound", "Largest accepted condition number for random operators"),
    "include": ("scenarios", "include", "Comma-separated plugin modules that register scenarios"),
}

_DEFAULT_CONFIG = (
    '[defaults]\noutput = "human"\nseed = 0\n\n'
    "[numerics]\nfd_step = 1e-6\nsamples = 64\nband = 8\nconditioning_bound = 1e6\n\n"
    "[scenarios]\ninclude = []\n"
)


def _coerce_value(key: str, raw: str) -> Any:
    """Best-effort coerce a CLI string to a native TOML type."""
    if key == "include":
        return [m.strip() for m in raw.split(",") if m.strip()]
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        pass
    return raw


def _lookup(key: str) -> tuple[str, str, str]:
    if key not in _KNOWN_KEYS:
        raise ConfigurationError(f"unknown config key {key!r} (known: {', '.join(_KNOWN_KEYS)})")
    return _KNOWN_KEYS[key]


@click.group("config")
def config_group() -> None:
    """Manage the user configuration file."""


@config_group.command("init")
@click.pass_context
def config_init(ctx: click.Context) -> None:
    """Create a default config.toml."""
    path = get_config_dir() / "config.toml"
    if path.exists():
        emit(ctx.obj, {"message": "config.toml already exists", "path": str(path)})
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_DEFAULT_CONFIG)
    emit(ctx.obj, {"created": "config.toml", "path": str(path)})


@config_group.command("path")
@click.pass_context
def config_path(ctx: click.Context) -> None:
    """Print the configuration file path."""
    emit(ctx.obj, {"path": str(get_config_dir() / "config.toml")}, columns=["path"])


@config_group.command("show")
@click.pass_context
def config_show(ctx: click.Context) -> None:
    """Show effective configuration (file values over built-in defaults)."""
    cfg = load_app_config().to_dict()
    if ctx.obj.get("fmt") == "json":
        emit(ctx.obj, cfg)
        return
    rows = [
        {"key": name, "section": section, "value": cfg[section][field]}
        for name, (section, field, _) in _KNOWN_KEYS.items()
    ]
    emit(ctx.obj, rows, columns=["key", "section", "value"])


@config_group.command("get")
@click.argument("key")
@click.pass_context
def config_get(ctx: click.Context, key: str) -> None:
    """Get an effective config value by key."""
    section, field, _ = _lookup(key)
    value = load_app_config().to_dict()[section][field]
    emit(ctx.obj, {"key": key, "value": value}, columns=["key", "value"])


@config_group.command("set")
@click.argument("key")
@click.argument("value")
@click.pass_context
def config_set(ctx: click.Context, key: str, value: str) -> None:
    """Set a config value; the file is left untouched if the result is invalid."""
    section, field, _ = _lookup(key)
    path = get_config_dir() / "config.toml"
    raw = _load_toml(path)
    previous = {k: dict(v) if isinstance(v, dict) else v for k, v in raw.items()}
    raw.setdefault(section, {})[field] = _coerce_value(key, value)
    _save_toml(path, raw)
    try:
        load_app_config()
    except ConfigurationError:
        _save_toml(path, previous)
        raise
    emit(ctx.obj, {"key": key, "value": raw[section][field], "updated": True})
