"""Numeric and serialization helpers"""

import json
import math
from typing import Any, Sequence, Tuple

import numpy as np
from scipy import stats
from scipy.special import gamma as gamma_fn

RELATIVE_TOLERANCE = 1e-12


def sphere_area(N: int) -> float:
    """Surface measure of the unit sphere in R^N, 2 pi^(N/2) / Gamma(N/2)"""
    return float(2.0 * math.pi ** (N / 2.0) / gamma_fn(N / 2.0))


def nearly_equal(a: float, b: float, rel_tol: float = RELATIVE_TOLERANCE) -> bool:
    """Relative comparison used for case dispatch on exponents"""
    if not (math.isfinite(a) and math.isfinite(b)):
        return a == b
    return abs(a - b) <= rel_tol * max(1.0, abs(a), abs(b))


def fit_loglog_slope(x: Sequence[float], y: Sequence[float]) -> Tuple[float, float]:
    """
    Least-squares slope of log(y) against log(x).

    Args:
        x: Positive abscissae (e.g. radii of an R-ladder)
        y: Positive ordinates (e.g. supremum estimates)

    Returns:
        Tuple of (slope, intercept) in log-log coordinates
    """
    x_arr = np.asarray(x, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    if len(x_arr) < 2 or len(x_arr) != len(y_arr):
        raise ValueError("need at least two matching points to fit a slope")
    if np.any(x_arr <= 0) or np.any(y_arr <= 0):
        raise ValueError("log-log fit requires strictly positive data")

    fit = stats.linregress(np.log(x_arr), np.log(y_arr))
    return float(fit.slope), float(fit.intercept)


def format_float(value: float) -> str:
    """17 significant digits, enough to round-trip any double"""
    return format(float(value), ".17g")


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end_pad = " " * (indent * level)

    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return json.dumps(bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        # JSON has no infinities; +inf bounds are written as null
        if not math.isfinite(value):
            return "null"
        return format_float(value)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end_pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + end_pad + "]"
    raise TypeError(f"cannot serialize object of type {type(obj).__name__}")


def dumps_exact(obj: Any, indent: int = 2) -> str:
    """
    Serialize to JSON with every float written at 17 significant digits.

    Output is deterministic: dict order is preserved and no timestamps are added.
    """
    return _encode(obj, indent, 0)
