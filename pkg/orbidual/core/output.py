"""Output formatters for JSON, plain (TSV), and human-readable modes.

Residual tables are the common case: floats render as ``1.234e-09`` in
both text modes and numeric columns are right-aligned in human mode.
"""

from __future__ import annotations

import json
import sys
from typing import Any, Sequence

import numpy as np

# Keys that hold the primary payload of a report, in priority order.
_PRIMARY_KEYS = ("results", "metrics")

# Report metadata stripped by --results-only.
_ENVELOPE_KEYS = frozenset({
    "scenario", "seed", "pass", "failures", "tolerances", "info",
    "suites", "total", "failed", "T", "dt",
})


def _format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "yes" if value else "no"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.3e}"
    return str(value)


def _is_numeric(value: Any) -> bool:
    return isinstance(value, (int, float, np.integer, np.floating)) and not isinstance(value, (bool, np.bool_))


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays (and nested containers) to JSON types.

    Complex entries become ``[re, im]`` pairs.
    """
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            value = np.stack([value.real, value.imag], axis=-1)
        return value.tolist()
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


# ---------------------------------------------------------------------------
# JSON transforms (--results-only, --select)
# ---------------------------------------------------------------------------

def _unwrap_primary(data: Any) -> Any:
    """Return the payload of a report: its results, its metrics, or its only non-envelope field."""
    if not isinstance(data, dict):
        return data
    for key in _PRIMARY_KEYS:
        if key in data:
            return data[key]
    payload = [k for k in data if k not in _ENVELOPE_KEYS]
    return data[payload[0]] if len(payload) == 1 else data


def _get_at_path(obj: Any, path: str) -> tuple[Any, bool]:
    cur = obj
    for seg in filter(None, (s.strip() for s in path.split("."))):
        try:
            cur = cur[int(seg)] if isinstance(cur, list) else cur[seg]
        except (KeyError, IndexError, ValueError, TypeError):
            return None, False
    return cur, True


def _select_fields(data: Any, fields: list[str]) -> Any:
    """Project dot-path *fields*; missing paths are left out."""
    if isinstance(data, list):
        return [_select_fields(item, fields) for item in data]
    if not isinstance(data, dict):
        return data
    picked = {f: _get_at_path(data, f) for f in fields}
    return {f: val for f, (val, found) in picked.items() if found}


def apply_json_transforms(
    data: Any,
    *,
    results_only: bool = False,
    select: str | None = None,
) -> Any:
    if results_only:
        data = _unwrap_primary(data)
    fields = [f.strip() for f in (select or "").split(",") if f.strip()]
    return _select_fields(data, fields) if fields else data


# ---------------------------------------------------------------------------
# Core output functions
# ---------------------------------------------------------------------------

def output_json(
    data: Any,
    *,
    results_only: bool = False,
    select: str | None = None,
) -> None:
    """One sorted JSON document on a single stdout line."""
    data = apply_json_transforms(to_jsonable(data), results_only=results_only, select=select)
    sys.stdout.write(json.dumps(data, default=str, ensure_ascii=False, sort_keys=True) + "\n")
    sys.stdout.flush()


def output_plain(rows: Sequence[dict[str, Any]], columns: Sequence[str]) -> None:
    """TSV with a header row; tabs and newlines inside cells become spaces."""
    lines = ["\t".join(columns)]
    for row in rows:
        cells = (_format_cell(row.get(c)).replace("\t", " ").replace("\n", " ") for c in columns)
        lines.append("\t".join(cells))
    sys.stdout.write("\n".join(lines) + "\n")
    sys.stdout.flush()


def output_human(rows: Sequence[dict[str, Any]], columns: Sequence[str]) -> None:
    cells = [[_format_cell(row.get(c)) for c in columns] for row in rows]
    numeric = [bool(rows) and all(_is_numeric(row.get(c)) for row in rows if row.get(c) is not None) for c in columns]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]

    def line(values: Sequence[str], align: Sequence[bool]) -> str:
        parts = [v.rjust(w) if right else v.ljust(w) for v, w, right in zip(values, widths, align)]
        return "   ".join(parts).rstrip()

    out = [line([c.upper() for c in columns], [False] * len(columns))]
    out.extend(line(r, numeric) for r in cells)
    sys.stdout.write("\n".join(out) + "\n")
    sys.stdout.flush()


def output_result(
    data: Any,
    *,
    fmt: str = "human",
    columns: Sequence[str] | None = None,
    results_only: bool = False,
    select: str | None = None,
) -> None:
    """Dispatch on *fmt* (``json``, ``plain`` or ``human``).

    Text modes expect a list of row dicts; a single dict is one row and
    anything else is shown under a ``result`` column.
    """
    if fmt == "json":
        output_json(data, results_only=results_only, select=select)
        return
    if not isinstance(data, list):
        data = [data] if isinstance(data, dict) else [{"result": data}]
    cols = list(columns or (data[0].keys() if data else ["result"]))
    if fmt == "plain":
        output_plain(data, cols)
    else:
        output_human(data, cols)


def emit(ctx_obj: dict[str, Any], data: Any, **kwargs: Any) -> None:
    """``output_result`` with the global transforms stored on *ctx.obj*."""
    kwargs.setdefault("fmt", ctx_obj.get("fmt", "human"))
    kwargs.setdefault("results_only", ctx_obj.get("results_only", False))
    kwargs.setdefault("select", ctx_obj.get("select"))
    output_result(data, **kwargs)
