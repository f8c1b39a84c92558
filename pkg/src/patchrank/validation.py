"""Input validation helpers shared by the functional core and the estimators."""

from __future__ import annotations

import numpy as np


def as_float_image(x, name: str = "image") -> np.ndarray:
    """Coerce ``x`` to a 2-D float64 array and enforce image invariants.

    Intensities are nominally in [0, 255] but values outside that range are
    legal mid-pipeline; only non-finite entries are rejected.
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_same_shape(a: np.ndarray, b: np.ndarray, what: str = "images") -> None:
    if a.shape != b.shape:
        raise ValueError(f"{what} have mismatched shapes {a.shape} vs {b.shape}")
