"""Fused mean-variance screening over a predictor matrix."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateSlicesError, InputError
from .mv import mv_hat_columns_multi
from .slicing import (
    SliceLabels,
    build_categorical_slices,
    build_discrete_slices,
    build_quantile_slices,
    default_schemes,
)

__all__ = [
    "ResponseKind",
    "Dataset",
    "FmvScore",
    "ScreeningResult",
    "default_selection_size",
    "fmv_hat",
    "fmv_scores",
    "screen",
]


class ResponseKind(Enum):
    CONTINUOUS = "continuous"
    CATEGORICAL = "categorical"
    COUNT = "count"


@dataclass(frozen=True)
class Dataset:
    """Response vector plus predictor matrix to be screened.

    Categorical and count responses are stored as reals with the kind tag
    deciding how slices are built.
    """

    y: np.ndarray
    x: np.ndarray
    kind: ResponseKind = ResponseKind.CONTINUOUS
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        y = np.asarray(self.y, dtype=np.float64)
        x = np.asarray(self.x, dtype=np.float64)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "x", x)
        if y.ndim != 1 or x.ndim != 2:
            raise InputError("y must be a vector and x an n-by-p matrix")
        n, p = x.shape
        if y.size != n:
            raise InputError(f"y has {y.size} entries but x has {n} rows")
        if n < 2 or p < 1:
            raise InputError(f"need n >= 2 and p >= 1, got n={n}, p={p}")
        if not np.isfinite(y).all():
            raise InputError("y contains non-finite entries")
        bad = np.flatnonzero(~np.isfinite(x).all(axis=0))
        if bad.size:
            raise InputError(f"column {bad[0]} contains non-finite entries")
        if self.kind is ResponseKind.COUNT and (
            np.any(y < 0) or np.any(y != np.floor(y))
        ):
            raise InputError("count response must be nonnegative integer-valued")
        if self.names is not None and len(self.names) != p:
            raise InputError(f"{len(self.names)} names for {p} columns")

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def p(self) -> int:
        return self.x.shape[1]


@dataclass(frozen=True)
class FmvScore:
    """Per-scheme statistics for one predictor and their fused sum.

    ``degenerate`` marks scores computed under a response whose every slicing
    collapsed to a single slice; the score is then 0 rather than an error so
    one bad response never aborts a wide screen.
    """

    per_scheme: np.ndarray
    fused: float
    degenerate: bool = False


@dataclass(frozen=True)
class ScreeningResult:
    """Fused scores with the descending ranking and top selection.

    ``order`` is a permutation of 0..p-1 sorting scores descending, exact
    float ties broken by ascending column index so reruns are bit-identical.
    """

    scores: np.ndarray
    order: np.ndarray
    selected: np.ndarray
    d_n: int


def default_selection_size(n: int) -> int:
    """Conventional screening size ceil(n / log n)."""
    return math.ceil(n / math.log(n))


def labels_for_schemes(y, kind: ResponseKind, schemes) -> list[SliceLabels | None]:
    """Build one slicing per scheme; None marks a degenerate scheme.

    Categorical responses use the label partition once, ignoring the slice
    counts, so the returned list has length 1.
    """
    y = np.asarray(y, dtype=np.float64)
    if kind is ResponseKind.CATEGORICAL:
        try:
            return [build_categorical_slices(y)]
        except DegenerateSlicesError:
            return [None]
    out: list[SliceLabels | None] = []
    for s in schemes:
        try:
            if kind is ResponseKind.COUNT:
                labels = build_discrete_slices(y, s)
                out.append(labels if labels.s_eff > 1 else None)
            else:
                out.append(build_quantile_slices(y, s)[1])
        except DegenerateSlicesError:
            out.append(None)
    return out


def fmv_scores(x, y, kind: ResponseKind = ResponseKind.CONTINUOUS,
               schemes=None, threads: int = 1) -> tuple[np.ndarray, np.ndarray, bool]:
    """Fused scores for every column of a predictor matrix.

    Returns (fused, per_scheme, degenerate) where per_scheme has one row per
    scheme. Slicings depend only on y and are built once; columns are scored
    in parallel over disjoint blocks when threads > 1, which cannot change
    the result.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2:
        raise InputError(f"expected an n-by-p matrix, got shape {x.shape}")
    n, p = x.shape
    schemes = default_schemes(n) if schemes is None else list(schemes)
    if not schemes:
        raise InputError("schemes must be nonempty")
    labels_list = labels_for_schemes(y, kind, schemes)
    degenerate = all(lab is None for lab in labels_list)

    n_threads = _resolve_threads(threads)
    if n_threads <= 1 or p < 2 * n_threads:
        per_scheme = mv_hat_columns_multi(x, labels_list)
    else:
        per_scheme = np.zeros((len(labels_list), p))
        blocks = _column_blocks(p, n_threads)
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            for (lo, hi), block in zip(
                blocks,
                pool.map(lambda b: mv_hat_columns_multi(x[:, b[0]:b[1]], labels_list), blocks),
            ):
                per_scheme[:, lo:hi] = block
    return per_scheme.sum(axis=0), per_scheme, degenerate


def fmv_hat(x, y, kind: ResponseKind = ResponseKind.CONTINUOUS, schemes=None) -> FmvScore:
    """Fused score for a single predictor column."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise InputError(f"expected a vector, got shape {arr.shape}")
    fused, per_scheme, degenerate = fmv_scores(arr[:, None], y, kind, schemes)
    return FmvScore(per_scheme=per_scheme[:, 0], fused=float(fused[0]),
                    degenerate=degenerate)


def rank_descending(scores: np.ndarray) -> np.ndarray:
    """Indices sorting scores descending, ties broken by ascending index."""
    return np.argsort(-np.asarray(scores, dtype=np.float64), kind="stable")


def screen(dataset: Dataset, schemes=None, d_n: int | None = None,
           threads: int = 1) -> ScreeningResult:
    """Rank all predictors by fused score and keep the top d_n."""
    if d_n is None:
        d_n = default_selection_size(dataset.n)
    if d_n < 1:
        raise InputError(f"d_n must be at least 1, got {d_n}")
    fused, _, _ = fmv_scores(dataset.x, dataset.y, dataset.kind, schemes, threads)
    order = rank_descending(fused)
    return ScreeningResult(scores=fused, order=order,
                           selected=order[: min(d_n, dataset.p)], d_n=d_n)


def _resolve_threads(threads: int) -> int:
    if threads < 0:
        raise InputError(f"threads must be nonnegative, got {threads}")
    if threads == 0:
        import os

        return os.cpu_count() or 1
    return threads


def _column_blocks(p: int, k: int) -> list[tuple[int, int]]:
    step = -(-p // k)
    return [(lo, min(lo + step, p)) for lo in range(0, p, step)]
