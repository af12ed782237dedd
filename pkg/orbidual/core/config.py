"""Configuration loading for orbidual.

Handles two kinds of files:
  - config.toml          (user defaults under ``$ORBIDUAL_HOME``, default ``~/.orbidual``)
  - scenario configs     (JSON with ``"config_version": 1``; YAML accepted)
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib  # type: ignore[no-redef]

try:
    import tomli_w
except ImportError:
    tomli_w = None  # type: ignore[assignment]

from orbidual.core.errors import ConfigurationError

CONFIG_VERSION = 1
SEED_ENV = "ORBIDUAL_SEED"

_SCENARIO_KEYS = frozenset({"config_version", "scenario", "params", "output_dir", "seed"})


def get_config_dir() -> Path:
    return Path(os.environ.get("ORBIDUAL_HOME", "") or Path.home() / ".orbidual")


def _ensure_dir(path: Path) -> Path:
    path.mkdir(parents=True, exist_ok=True)
    return path


# ---------------------------------------------------------------------------
# Dataclasses
# ---------------------------------------------------------------------------

@dataclass
class Defaults:
    output: str = "human"
    seed: int = 0


@dataclass
class Numerics:
    fd_step: float = 1e-6
    samples: int = 64
    band: int = 8
    conditioning_bound: float = 1e6


@dataclass
class ScenarioIncludes:
    include: list[str] = field(default_factory=list)


@dataclass
class AppConfig:
    defaults: Defaults = field(default_factory=Defaults)
    numerics: Numerics = field(default_factory=Numerics)
    scenarios: ScenarioIncludes = field(default_factory=ScenarioIncludes)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class ScenarioConfig:
    scenario: str
    params: dict[str, Any] = field(default_factory=dict)
    output_dir: Path = Path("orbidual-out")
    seed: int = 0
    config_version: int = CONFIG_VERSION

    @property
    def run_dir(self) -> Path:
        return self.output_dir / self.scenario


# ---------------------------------------------------------------------------
# TOML user config
# ---------------------------------------------------------------------------

def _load_toml(path: Path) -> dict[str, Any]:
    if not path.exists():
        return {}
    with open(path, "rb") as f:
        try:
            return tomllib.load(f)
        except tomllib.TOMLDecodeError as e:
            raise ConfigurationError(f"{path}: {e}") from e


def _save_toml(path: Path, data: dict[str, Any]) -> None:
    if tomli_w is None:
        raise ConfigurationError("tomli_w is required to write TOML files")
    _ensure_dir(path.parent)
    with open(path, "wb") as f:
        tomli_w.dump(data, f)


def _section(cls: type, raw: Any, name: str) -> Any:
    if raw is None:
        return cls()
    if not isinstance(raw, dict):
        raise ConfigurationError(f"config.toml: [{name}] must be a table")
    values = {k: v for k, v in raw.items() if k in cls.__dataclass_fields__}
    defaults = cls()
    for key, value in values.items():
        expected = type(getattr(defaults, key))
        if expected is float and isinstance(value, int) and not isinstance(value, bool):
            values[key] = float(value)
        elif not isinstance(value, expected) or isinstance(value, bool) != isinstance(getattr(defaults, key), bool):
            raise ConfigurationError(f"config.toml: [{name}] {key} must be {expected.__name__}")
    return cls(**values)


def load_app_config(base: Path | None = None) -> AppConfig:
    base = base or get_config_dir()
    raw = _load_toml(base / "config.toml")
    cfg = AppConfig(
        defaults=_section(Defaults, raw.get("defaults"), "defaults"),
        numerics=_section(Numerics, raw.get("numerics"), "numerics"),
        scenarios=_section(ScenarioIncludes, raw.get("scenarios"), "scenarios"),
    )
    if cfg.defaults.output not in ("human", "json", "plain"):
        raise ConfigurationError(f"config.toml: unknown output mode {cfg.defaults.output!r}")
    if cfg.numerics.fd_step <= 0 or cfg.numerics.samples < 4 or cfg.numerics.band < 0:
        raise ConfigurationError("config.toml: [numerics] values out of range")
    return cfg


# ---------------------------------------------------------------------------
# Scenario configs
# ---------------------------------------------------------------------------

def _read_mapping(path: Path) -> dict[str, Any]:
    if not path.exists():
        raise ConfigurationError(f"Config file not found: {path}")
    text = path.read_text()
    if path.suffix.lower() in (".yaml", ".yml"):
        try:
            import yaml
        except ImportError:
            raise ConfigurationError("pyyaml is required for YAML configs: pip install pyyaml")
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            raise ConfigurationError(f"{path}: {e}") from e
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"{path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"{path}: top level must be a mapping")
    return data


def parse_scenario_config(raw: dict[str, Any], *, default_seed: int = 0) -> ScenarioConfig:
    unknown = sorted(set(raw) - _SCENARIO_KEYS)
    if unknown:
        raise ConfigurationError(f"Unknown config keys: {', '.join(unknown)}")
    version = raw.get("config_version")
    if version != CONFIG_VERSION:
        raise ConfigurationError(f"Unsupported config_version {version!r} (expected {CONFIG_VERSION})")
    scenario = raw.get("scenario")
    if not isinstance(scenario, str) or not scenario:
        raise ConfigurationError("Config is missing 'scenario'")
    params = raw.get("params") or {}
    if not isinstance(params, dict):
        raise ConfigurationError("'params' must be a mapping")
    seed = raw.get("seed", default_seed)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigurationError("'seed' must be an integer")
    return ScenarioConfig(
        scenario=scenario,
        params=dict(params),
        output_dir=Path(raw.get("output_dir") or "orbidual-out"),
        seed=resolve_seed(seed),
    )


def load_scenario_config(path: Path, *, default_seed: int = 0) -> ScenarioConfig:
    return parse_scenario_config(_read_mapping(Path(path)), default_seed=default_seed)


def resolve_seed(seed: int) -> int:
    """Environment override wins over the config seed."""
    env = os.environ.get(SEED_ENV, "").strip()
    if not env:
        return seed
    try:
        return int(env)
    except ValueError:
        raise ConfigurationError(f"{SEED_ENV} must be an integer, got {env!r}")
