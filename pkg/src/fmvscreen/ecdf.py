"""Empirical distribution function utilities."""

from __future__ import annotations

import math

import numpy as np

from .errors import InputError

__all__ = ["EcdfTable", "ecdf_at_samples", "empirical_quantile"]


def _as_finite_1d(x, name: str = "x") -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise InputError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise InputError(f"{name} must be nonempty")
    if not np.isfinite(arr).all():
        raise InputError(f"{name} contains non-finite entries")
    return arr


class EcdfTable:
    """Empirical CDF of a sample, evaluable at arbitrary points.

    F(t) = #{k: x_k <= t} / n. Right-continuous, nondecreasing, F(max) = 1,
    and 0 below the sample minimum.
    """

    def __init__(self, x) -> None:
        arr = _as_finite_1d(x)
        self.values = np.sort(arr)
        self.n = arr.size

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        out = np.searchsorted(self.values, t, side="right") / self.n
        return float(out) if out.ndim == 0 else out


def ecdf_at_samples(x) -> np.ndarray:
    """Evaluate the sample ECDF at every sample point.

    Returns F(x_i) = #{k: x_k <= x_i} / n for each i, counting ties as <=.
    """
    arr = _as_finite_1d(x)
    xs = np.sort(arr)
    return np.searchsorted(xs, arr, side="right") / arr.size


def empirical_quantile(y, q: float) -> float:
    """Generalized inverse of the sample ECDF: inf{t in sample: F(t) >= q}.

    q = 0 returns the sample minimum.
    """
    arr = _as_finite_1d(y, "y")
    if not 0.0 <= q <= 1.0:
        raise InputError(f"q must lie in [0, 1], got {q}")
    n = arr.size
    ys = np.sort(arr)
    k = max(math.ceil(q * n), 1)
    # one-step corrections guard against float error in ceil(q * n)
    while k > 1 and (k - 1) / n >= q:
        k -= 1
    while k < n and k / n < q:
        k += 1
    return float(ys[k - 1])
