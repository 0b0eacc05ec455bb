"""Input validation helpers shared by the estimators and functions."""
from __future__ import annotations

import numbers

import numpy as np

from .exceptions import ConfigError, SeriesError

LEVELS = (0.10, 0.05, 0.01)


def as_1d(x, name="series"):
    """Return a float64 copy of a 1-d input (TimeSeries or array-like)."""
    values = getattr(x, "values", x)
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 2 and 1 in arr.shape:
        arr = arr.ravel()
    if arr.ndim != 1:
        raise SeriesError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise SeriesError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise SeriesError(f"{name} has a non-finite value at position {bad}")
    return arr


def as_2d(x, name="data"):
    """Stack a list of series (or a T x k array) into a T x k float array."""
    if isinstance(x, (list, tuple)) and x and hasattr(x[0], "values"):
        lengths = {len(s.values) for s in x}
        if len(lengths) != 1:
            raise SeriesError(f"{name}: series lengths differ {sorted(lengths)}; align them first")
        arr = np.column_stack([np.asarray(s.values, dtype=float) for s in x])
    else:
        arr = np.asarray(getattr(x, "values", x), dtype=float)
    if arr.ndim != 2:
        raise SeriesError(f"{name} must be two-dimensional (T x k), got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise SeriesError(f"{name} contains non-finite values")
    return arr


def check_level(level):
    try:
        level = float(level)
    except (TypeError, ValueError):
        raise ConfigError(f"significance level must be a number, got {level!r}") from None
    for allowed in LEVELS:
        if abs(level - allowed) < 1e-12:
            return allowed
    raise ConfigError(f"significance level must be one of {LEVELS}, got {level}")


def check_nonneg_int(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 0:
        raise ConfigError(f"{name} must be a non-negative integer, got {value!r}")
    return int(value)
