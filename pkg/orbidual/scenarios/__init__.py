"""Registry of named scenarios.

Every scenario is a plain function registered via ``@register_scenario``
together with its parameter defaults and tolerances.  The function takes a
:class:`ScenarioContext` and returns a :class:`ScenarioOutcome`; the runner
in :mod:`orbidual.scenarios.runner` turns that into a report and artifacts.

Scenarios that pair two Hamiltonian spaces additionally register a
``@register_duality`` setup used by ``orbidual duality``.
"""

from __future__ import annotations

import importlib
import logging
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from orbidual.core.config import Numerics
from orbidual.core.errors import ConfigurationError, UnknownScenarioError

log = logging.getLogger("orbidual.scenarios")


@dataclass
class ScenarioContext:
    params: dict[str, Any]
    rng: np.random.Generator
    seed: int = 0
    progress: bool = False
    numerics: Numerics = field(default_factory=Numerics)


@dataclass
class TrajectoryArtifact:
    name: str
    times: np.ndarray
    states: np.ndarray
    labels: list[str] | None = None
    group_curve: list[np.ndarray] | None = None


@dataclass
class ScenarioOutcome:
    """Measured residuals plus whatever the runner should write next to the report."""

    metrics: dict[str, float]
    info: dict[str, Any] = field(default_factory=dict)
    trajectories: list[TrajectoryArtifact] = field(default_factory=list)
    loops: dict[str, np.ndarray] = field(default_factory=dict)
    spectra: dict[str, tuple[np.ndarray, int]] = field(default_factory=dict)
    skipped: list[str] = field(default_factory=list)


@dataclass
class DualitySetup:
    space_a: Any
    p0_a: Any
    space_b: Any
    p0_b: Any
    hamiltonian: Any
    T: float
    dt: float


ScenarioFunc = Callable[[ScenarioContext], ScenarioOutcome]
DualityFunc = Callable[[ScenarioContext], DualitySetup]


@dataclass
class Scenario:
    name: str
    run: ScenarioFunc
    summary: str = ""
    defaults: dict[str, Any] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    duality: DualityFunc | None = None

    def schema(self) -> dict[str, Any]:
        params = {
            key: {"default": value, "type": _type_name(value)}
            for key, value in self.defaults.items()
        }
        return {
            "scenario": self.name,
            "params": params,
            "tolerances": dict(self.tolerances),
            "duality": self.duality is not None,
        }


def _type_name(value: Any) -> str:
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, int):
        return "integer"
    if isinstance(value, float):
        return "number"
    if isinstance(value, (list, tuple)):
        return "array"
    if isinstance(value, str):
        return "string"
    return type(value).__name__


def _first_line(doc: str | None) -> str:
    lines = (doc or "").strip().splitlines()
    return lines[0] if lines else ""


_REGISTRY: dict[str, Scenario] = {}


def register_scenario(
    name: str,
    *,
    summary: str = "",
    defaults: dict[str, Any] | None = None,
    tolerances: dict[str, float] | None = None,
):
    """Decorator that registers a scenario function under *name*."""
    def decorator(func: ScenarioFunc) -> ScenarioFunc:
        previous = _REGISTRY.get(name)
        _REGISTRY[name] = Scenario(
            name, func, summary or _first_line(func.__doc__),
            dict(defaults or {}), dict(tolerances or {}),
            duality=previous.duality if previous else None,
        )
        return func
    return decorator


def register_duality(name: str):
    """Decorator attaching a duality setup to an already registered scenario."""
    def decorator(func: DualityFunc) -> DualityFunc:
        scenario = _REGISTRY.get(name)
        if scenario is None:
            raise ConfigurationError(f"cannot attach a duality setup to unregistered scenario {name!r}")
        scenario.duality = func
        return func
    return decorator


def get_scenario(name: str) -> Scenario:
    scenario = _REGISTRY.get(name)
    if scenario is None:
        known = ", ".join(list_scenarios())
        raise UnknownScenarioError(f"Unknown scenario: {name!r} (known: {known})")
    return scenario


def list_scenarios() -> list[str]:
    return sorted(_REGISTRY)


def load_includes(modules: list[str]) -> list[str]:
    """Import plugin modules named in ``[scenarios] include`` so they can register."""
    loaded = []
    for module in modules:
        try:
            importlib.import_module(module)
        except ImportError as e:
            raise ConfigurationError(f"cannot import scenario plugin {module!r}: {e}") from e
        log.debug("loaded scenario plugin %s", module)
        loaded.append(module)
    return loaded


# Import built-ins so they register themselves.
from orbidual.scenarios import lu_weinstein as _lu_weinstein  # noqa: E402, F401
from orbidual.scenarios import monodromic as _monodromic  # noqa: E402, F401
from orbidual.scenarios import rigidbody as _rigidbody  # noqa: E402, F401
