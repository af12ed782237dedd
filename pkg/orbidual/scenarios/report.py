"""Residual reports: measured metrics against their tolerances."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any


@dataclass
class ResidualReport:
    """``passed`` holds iff every toleranced metric is finite and within bound.

    Metrics without a tolerance entry are informational and never fail a run.
    """

    scenario: str
    metrics: dict[str, float]
    tolerances: dict[str, float]
    info: dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    @property
    def failures(self) -> list[str]:
        out = []
        for name, tol in sorted(self.tolerances.items()):
            value = self.metrics.get(name)
            if value is None or not math.isfinite(value) or value > tol:
                out.append(name)
        return out

    @property
    def passed(self) -> bool:
        return not self.failures

    def rows(self) -> list[dict[str, Any]]:
        rows = []
        for name in sorted(self.metrics):
            tol = self.tolerances.get(name)
            value = self.metrics[name]
            rows.append({
                "metric": name,
                "value": value,
                "tolerance": tol if tol is not None else "",
                "ok": "" if tol is None else name not in self.failures,
            })
        return rows

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario": self.scenario,
            "pass": self.passed,
            "metrics": dict(sorted(self.metrics.items())),
            "tolerances": dict(sorted(self.tolerances.items())),
            "failures": self.failures,
            "info": self.info,
            "seed": self.seed,
        }
