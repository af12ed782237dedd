"""Invariant suites: one registered function per module, each returning residuals with tolerances.

Suites register via ``@register_suite`` and are run in registration order by
:func:`run_checks`.  ``corrupt`` perturbs the built-in structure constants so
the suite can be seen to fail.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np
from tqdm import tqdm

from orbidual.core.errors import ConfigurationError

log = logging.getLogger("orbidual.checks")


@dataclass
class CheckContext:
    rng: np.random.Generator
    samples: int = 20
    corrupt: bool = False


@dataclass
class CheckResult:
    suite: str
    name: str
    residual: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual)) and self.residual <= self.tolerance

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "check": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "detail": self.detail,
        }


@dataclass
class CheckSummary:
    results: list[CheckResult] = field(default_factory=list)
    suites: list[str] = field(default_factory=list)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {
            "suites": self.suites,
            "pass": self.passed,
            "total": len(self.results),
            "failed": len(self.failures),
            "results": [r.to_dict() for r in self.results],
        }


SuiteFunc = Callable[[CheckContext], list[CheckResult]]

_REGISTRY: dict[str, SuiteFunc] = {}


def register_suite(name: str):
    """Decorator that registers a check suite under *name*."""
    def decorator(func: SuiteFunc) -> SuiteFunc:
        _REGISTRY[name] = func
        return func
    return decorator


def get_suite(name: str) -> SuiteFunc | None:
    return _REGISTRY.get(name)


def list_suites() -> list[str]:
    return list(_REGISTRY.keys())


def select_suites(filter: str | None) -> list[str]:
    if not filter:
        return list_suites()
    wanted = [f.strip() for f in filter.split(",") if f.strip()]
    chosen = [name for name in list_suites() if any(name.startswith(w) for w in wanted)]
    if not chosen:
        raise ConfigurationError(f"no check suite matches {filter!r} (known: {', '.join(list_suites())})")
    return chosen


def run_checks(
    filter: str | None = None,
    *,
    seed: int = 0,
    samples: int = 20,
    corrupt: bool = False,
    progress: bool = False,
) -> CheckSummary:
    names = select_suites(filter)
    ctx = CheckContext(np.random.default_rng(seed), samples=samples, corrupt=corrupt)
    summary = CheckSummary(suites=names)
    for name in tqdm(names, desc="checks", disable=not progress, leave=False, unit="suite"):
        results = _REGISTRY[name](ctx)
        for r in results:
            if not r.passed:
                log.error("%s/%s: residual %.3e exceeds %.1e %s", r.suite, r.name, r.residual, r.tolerance, r.detail)
        summary.results.extend(results)
    return summary


# Import built-ins so they register themselves.
from orbidual.checks import suites as _suites  # noqa: E402, F401
