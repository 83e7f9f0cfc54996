"""Input validation helpers shared by the estimators and the engine."""

from __future__ import annotations

import numpy as np


def check_array(x, *, name: str = "X", ndim: int | None = None, dtype=np.float64,
                min_rows: int | None = None) -> np.ndarray:
    """Coerce to a finite ndarray, raising ValueError on bad input."""
    arr = np.asarray(x, dtype=dtype)
    if ndim is not None and arr.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if min_rows is not None and arr.shape[0] < min_rows:
        raise ValueError(f"{name} needs at least {min_rows} rows, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_vector(x, *, name: str = "x", length: int | None = None) -> np.ndarray:
    arr = check_array(x, name=name, ndim=1)
    if length is not None and arr.shape[0] != length:
        raise ValueError(f"{name} must have length {length}, got {arr.shape[0]}")
    return arr


def check_length_match(a, b, *, names: tuple[str, str] = ("a", "b")) -> None:
    if len(a) != len(b):
        raise ValueError(
            f"{names[0]} and {names[1]} must have equal length, got {len(a)} and {len(b)}"
        )
