"""Delimited and JSON result writers.

CSV: header row, comma separated, 17 significant digits for reals.  JSON:
keys are emitted in insertion order, so building dicts deterministically
gives byte-identical output across runs.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

__all__ = ["fmt_real", "write_csv", "write_json", "series_columns", "complex_pair"]


def fmt_real(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(path, header, columns) -> None:
    """Write equal-length columns of reals under the given header."""
    columns = [np.asarray(c, dtype=float) for c in columns]
    n = len(columns[0])
    if any(len(c) != n for c in columns):
        raise ValueError("columns must have equal length")
    lines = [",".join(header)]
    for i in range(n):
        lines.append(",".join(fmt_real(c[i]) for c in columns))
    Path(path).write_text("\n".join(lines) + "\n")


def _jsonable(o):
    """Narrow numpy scalars to their Python equivalents."""
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def write_json(path, obj) -> None:
    Path(path).write_text(
        json.dumps(obj, indent=2, allow_nan=True, default=_jsonable) + "\n")


def series_columns(x, values):
    """Standard (x, re, im, abs) column set for a complex series."""
    values = np.asarray(values)
    return ["x", "re", "im", "abs"], [x, values.real, values.imag, np.abs(values)]


def complex_pair(z: complex) -> dict:
    """JSON-friendly complex number; NaN components become null."""
    re = None if math.isnan(z.real) else z.real
    im = None if math.isnan(z.imag) else z.imag
    return {"re": re, "im": im}
