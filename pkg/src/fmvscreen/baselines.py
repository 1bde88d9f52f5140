"""Reference screeners: Pearson correlation, Kendall rank correlation, and a
fused Kolmogorov-distance filter built on the same slicing machinery."""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .errors import InputError
from .screening import ResponseKind, labels_for_schemes
from .slicing import default_schemes

__all__ = [
    "BaselineKind",
    "pearson_score",
    "pearson_scores",
    "kendall_score",
    "kendall_scores",
    "fks_score",
    "fks_scores",
]


class BaselineKind(Enum):
    PEARSON_SIS = "sis"
    KENDALL_RCS = "rcs"
    FUSED_KOLMOGOROV = "fks"


# -- Pearson ---------------------------------------------------------------

def pearson_scores(x: np.ndarray, y) -> np.ndarray:
    """|sample correlation| of y with every column; constant columns score 0."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 2 or y.ndim != 1 or x.shape[0] != y.size:
        raise InputError("x must be n-by-p and y length n")
    if y.size < 2:
        raise InputError("need at least two observations")
    yc = y - y.mean()
    ss_y = float(yc @ yc)
    if ss_y == 0.0:
        raise InputError("response has zero variance")
    xc = x - x.mean(axis=0)
    ss_x = (xc * xc).sum(axis=0)
    out = np.zeros(x.shape[1])
    live = ss_x > 0.0
    out[live] = np.abs((xc[:, live].T @ yc) / np.sqrt(ss_x[live] * ss_y))
    return out


def pearson_score(x, y) -> float:
    return float(pearson_scores(np.asarray(x, dtype=np.float64)[:, None], y)[0])


# -- Kendall tau-b ----------------------------------------------------------

def _sorted_with_inversions(a: np.ndarray) -> tuple[np.ndarray, int]:
    """Merge sort that also counts strict inversions (a[i] > a[j], i < j)."""
    n = a.size
    if n <= 1:
        return a, 0
    mid = n // 2
    left, c_left = _sorted_with_inversions(a[:mid])
    right, c_right = _sorted_with_inversions(a[mid:])
    cross = int((left.size - np.searchsorted(left, right, side="right")).sum())
    pos = np.searchsorted(left, right, side="left") + np.arange(right.size)
    merged = np.empty(n, dtype=a.dtype)
    taken = np.zeros(n, dtype=bool)
    taken[pos] = True
    merged[taken] = right
    merged[~taken] = left
    return merged, c_left + c_right + cross


def _tie_pair_count(sorted_vals: np.ndarray) -> int:
    change = np.flatnonzero(sorted_vals[1:] != sorted_vals[:-1])
    runs = np.diff(np.concatenate(([0], change + 1, [sorted_vals.size])))
    return int((runs * (runs - 1) // 2).sum())


def kendall_score(x, y) -> float:
    """|tau_b| with tie correction, via merge-sort inversion counting.

    After sorting by (x, y), discordant pairs are exactly the strict
    inversions of the y sequence; concordant minus discordant then follows
    from the pair-tie counts. All-tied x or y scores 0.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.size != y.size:
        raise InputError("x and y must be vectors of equal length")
    n = x.size
    if n < 2:
        raise InputError("need at least two observations")
    order = np.lexsort((y, x))
    xs, ys = x[order], y[order]
    total = n * (n - 1) // 2
    ties_x = _tie_pair_count(xs)
    ties_y = _tie_pair_count(np.sort(y))
    both_change = np.flatnonzero((xs[1:] != xs[:-1]) | (ys[1:] != ys[:-1]))
    runs = np.diff(np.concatenate(([0], both_change + 1, [n])))
    ties_both = int((runs * (runs - 1) // 2).sum())
    _, discordant = _sorted_with_inversions(ys)
    con_minus_dis = total - ties_x - ties_y + ties_both - 2 * discordant
    denom = math.sqrt(float(total - ties_x) * float(total - ties_y))
    if denom == 0.0:
        return 0.0
    return abs(con_minus_dis / denom)


def kendall_score_bruteforce(x, y) -> float:
    """Pairwise O(n^2) concordance count; test oracle for kendall_score."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = x.size
    dx = np.sign(x[:, None] - x[None, :])
    dy = np.sign(y[:, None] - y[None, :])
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    concordant = int((upper & (dx * dy > 0)).sum())
    discordant = int((upper & (dx * dy < 0)).sum())
    total = n * (n - 1) // 2
    ties_x = _tie_pair_count(np.sort(x))
    ties_y = _tie_pair_count(np.sort(y))
    denom = math.sqrt(float(total - ties_x) * float(total - ties_y))
    if denom == 0.0:
        return 0.0
    return abs((concordant - discordant) / denom)


def kendall_scores(x: np.ndarray, y) -> np.ndarray:
    """|tau_b| of y with every column."""
    x = np.asarray(x, dtype=np.float64)
    return np.array([kendall_score(x[:, j], y) for j in range(x.shape[1])])


# -- Fused Kolmogorov filter -------------------------------------------------

def fks_scores(x: np.ndarray, y, kind: ResponseKind = ResponseKind.CONTINUOUS,
               schemes=None) -> np.ndarray:
    """Per scheme, the largest Kolmogorov distance between any two per-slice
    conditional ECDFs of a column, summed over schemes."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2:
        raise InputError(f"expected an n-by-p matrix, got shape {x.shape}")
    n, p = x.shape
    if schemes is None:
        schemes = default_schemes(n)
    labels_list = labels_for_schemes(y, kind, schemes)
    bad = np.flatnonzero(~np.isfinite(x).all(axis=0))
    if bad.size:
        raise InputError(f"column {bad[0]} contains non-finite entries")

    order = np.argsort(x, axis=0, kind="stable")
    xs = np.take_along_axis(x, order, axis=0)
    rows = np.arange(n)[:, None]
    is_run_end = np.empty((n, p), dtype=bool)
    is_run_end[-1] = True
    is_run_end[:-1] = xs[:-1] != xs[1:]
    t = np.minimum.accumulate(np.where(is_run_end, rows, n)[::-1], axis=0)[::-1]

    out = np.zeros(p)
    for labels in labels_list:
        if labels is None or labels.s_eff == 1:
            continue
        gs = labels.g[order]
        cond = []
        for s in range(1, labels.s_eff + 1):
            cum = np.cumsum(gs == s, axis=0)
            cond.append(np.take_along_axis(cum, t, axis=0) / labels.counts[s - 1])
        best = np.zeros(p)
        for a in range(len(cond)):
            for b in range(a + 1, len(cond)):
                gap = np.abs(cond[a] - cond[b]).max(axis=0)
                best = np.maximum(best, gap)
        out += best
    return out


def fks_score(x, y, kind: ResponseKind = ResponseKind.CONTINUOUS, schemes=None) -> float:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise InputError(f"expected a vector, got shape {arr.shape}")
    return float(fks_scores(arr[:, None], y, kind, schemes)[0])
