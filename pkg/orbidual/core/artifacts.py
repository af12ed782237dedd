"""Plot-ready artifact writers: trajectory CSV, report JSON, loop snapshots."""

from __future__ import annotations

import csv
import json
import logging
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from orbidual.core.output import to_jsonable

log = logging.getLogger("orbidual.artifacts")


def _ensure_parent(path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def matrix_columns(prefix: str, shape: tuple[int, int], complex_entries: bool) -> list[str]:
    cols = []
    for i in range(shape[0]):
        for j in range(shape[1]):
            if complex_entries:
                cols += [f"re_{prefix}{i}{j}", f"im_{prefix}{i}{j}"]
            else:
                cols.append(f"{prefix}{i}{j}")
    return cols


def matrix_values(m: np.ndarray, complex_entries: bool) -> list[float]:
    flat = np.asarray(m).ravel()
    if complex_entries:
        return [float(v) for z in flat for v in (z.real, z.imag)]
    return [float(v) for v in flat.real]


def write_trajectory_csv(
    path: Path,
    times: Sequence[float],
    states: np.ndarray,
    *,
    state_labels: Sequence[str] | None = None,
    group_curve: Sequence[np.ndarray] | None = None,
) -> Path:
    """Header ``t,<state coords...>,<group matrix entries...>``."""
    states = np.asarray(states, dtype=float)
    if states.ndim == 1:
        states = states[:, None]
    labels = list(state_labels or [f"x{i}" for i in range(states.shape[1])])
    header = ["t", *labels]
    complex_entries = False
    if group_curve is not None:
        first = np.asarray(group_curve[0])
        complex_entries = bool(np.iscomplexobj(first))
        header += matrix_columns("g", first.shape, complex_entries)
    with open(_ensure_parent(Path(path)), "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for k, t in enumerate(times):
            row = [repr(float(t)), *(repr(float(v)) for v in states[k])]
            if group_curve is not None:
                row += [repr(v) for v in matrix_values(group_curve[k], complex_entries)]
            writer.writerow(row)
    log.debug("wrote %s (%d rows)", path, len(times))
    return Path(path)


def write_json(path: Path, data: Any) -> Path:
    with open(_ensure_parent(Path(path)), "w") as f:
        json.dump(to_jsonable(data), f, indent=2, sort_keys=True)
        f.write("\n")
    return Path(path)


def write_loop_snapshot(path: Path, samples: np.ndarray) -> Path:
    """Per-sample matrices as nested ``[re, im]`` pairs."""
    return write_json(path, {"samples": np.asarray(samples, dtype=complex)})


def write_spectral_csv(path: Path, coeffs: np.ndarray, band: int) -> Path:
    """Rows ``m,component,re,im`` for coefficient array indexed by ``m + band``."""
    coeffs = np.asarray(coeffs, dtype=complex)
    with open(_ensure_parent(Path(path)), "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["m", "component", "re", "im"])
        for idx in range(coeffs.shape[0]):
            for comp in range(coeffs.shape[1]):
                z = coeffs[idx, comp]
                writer.writerow([idx - band, comp, repr(float(z.real)), repr(float(z.imag))])
    return Path(path)
