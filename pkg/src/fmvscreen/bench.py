"""Replicated minimum-model-size benchmark over the experiment designs.

One replication draws an instance, scores it with every requested screener,
and records each screener's minimum model size: the smallest ranking prefix
containing the whole active set. Replications use independently derived
seeds, so any execution order (or thread count) produces the same report.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .baselines import fks_scores, kendall_scores, pearson_scores
from .errors import InputError
from .screening import fmv_scores, rank_descending
from .simulate import (
    ExperimentSpec,
    active_set,
    derived_rng,
    experiment_schemes,
    gen_experiment,
)

__all__ = [
    "SCREENER_NAMES",
    "MmsSummary",
    "mms",
    "run_replications",
    "render_table_csv",
    "render_table_text",
    "parse_table_csv",
    "write_reports",
]


@dataclass(frozen=True)
class MmsSummary:
    """Replicated minimum-model-size record for one (experiment, screener)."""

    experiment: str
    screener: str
    n_active: int
    replications: int
    mms: np.ndarray
    median: float
    sd: float
    se: float
    degenerate_reps: tuple[int, ...] = ()
    spread_defined: bool = True


def mms(scores, active) -> int:
    """Worst descending-order rank among the active columns (1-based)."""
    scores = np.asarray(scores, dtype=np.float64)
    active = sorted(set(int(a) for a in active))
    if not active:
        raise InputError("active set must be nonempty")
    if active[0] < 1 or active[-1] > scores.size:
        raise InputError(f"active indices out of range 1..{scores.size}")
    order = rank_descending(scores)
    ranks = np.empty(scores.size, dtype=np.int64)
    ranks[order] = np.arange(1, scores.size + 1)
    return int(max(ranks[a - 1] for a in active))


def _fmv_scorer(ds, schemes):
    fused, _, degenerate = fmv_scores(ds.x, ds.y, ds.kind, schemes)
    return fused, degenerate


def _fks_scorer(ds, schemes):
    scores = fks_scores(ds.x, ds.y, ds.kind, schemes)
    return scores, bool(np.all(scores == 0.0))


_SCORERS = {
    "fmv": _fmv_scorer,
    "sis": lambda ds, schemes: (pearson_scores(ds.x, ds.y), False),
    "rcs": lambda ds, schemes: (kendall_scores(ds.x, ds.y), False),
    "fks": _fks_scorer,
}

SCREENER_NAMES = tuple(sorted(_SCORERS))


def _score_one(name: str, instance, schemes) -> tuple[np.ndarray, bool]:
    ds = instance.dataset
    try:
        return _SCORERS[name](ds, schemes)
    except ValueError:
        # a pathological draw (e.g. zero-variance response) flags, never aborts
        return np.zeros(ds.p), True


def run_replications(spec: ExperimentSpec, screeners, reps: int,
                     base_seed: int | None = None, threads: int = 1) -> list[MmsSummary]:
    """Benchmark every requested screener over ``reps`` replications.

    All screeners score the same instance within a replication (paired
    comparison). Replication r uses the stream derived from (base_seed, r),
    so parallel execution is bit-reproducible.
    """
    screeners = list(screeners)
    if reps < 1:
        raise InputError(f"need at least one replication, got {reps}")
    if not screeners:
        raise InputError("screener list must be nonempty")
    for name in screeners:
        if name not in SCREENER_NAMES:
            raise InputError(f"unknown screener {name!r}; expected one of {SCREENER_NAMES}")
    if base_seed is None:
        base_seed = spec.seed
    schemes = experiment_schemes(spec)

    values = {name: np.empty(reps, dtype=np.int64) for name in screeners}
    flagged = {name: np.zeros(reps, dtype=bool) for name in screeners}

    def one_rep(r: int) -> None:
        instance = gen_experiment(spec, derived_rng(base_seed, r))
        for name in screeners:
            scores, degenerate = _score_one(name, instance, schemes)
            values[name][r] = mms(scores, instance.active)
            flagged[name][r] = degenerate

    n_workers = _resolve_threads(threads)
    if n_workers <= 1 or reps == 1:
        for r in range(reps):
            one_rep(r)
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            list(pool.map(one_rep, range(reps)))

    n_active = len(active_set(spec.id))
    out = []
    for name in screeners:
        v = values[name]
        spread_defined = reps > 1
        sd = float(np.std(v, ddof=1)) if spread_defined else 0.0
        out.append(MmsSummary(
            experiment=spec.id,
            screener=name,
            n_active=n_active,
            replications=reps,
            mms=v,
            median=float(np.median(v)),
            sd=sd,
            se=sd / math.sqrt(reps) if spread_defined else 0.0,
            degenerate_reps=tuple(int(i) for i in np.flatnonzero(flagged[name])),
            spread_defined=spread_defined,
        ))
    return out


_CSV_HEADER = "experiment,screener,n_active,replications,median,sd,se"


def _sorted_rows(summaries) -> list[MmsSummary]:
    return sorted(summaries, key=lambda s: (s.experiment, s.screener))


def render_table_csv(summaries) -> str:
    """Deterministic CSV rendering, keyed and sorted by (experiment, screener)."""
    if not summaries:
        raise InputError("no summaries to render")
    lines = [_CSV_HEADER]
    for s in _sorted_rows(summaries):
        lines.append(
            f"{s.experiment},{s.screener},{s.n_active},{s.replications},"
            f"{s.median!r},{s.sd!r},{s.se!r}"
        )
    return "\n".join(lines) + "\n"


def parse_table_csv(text: str) -> list[dict]:
    """Inverse of render_table_csv for the emitted fields."""
    lines = [ln for ln in text.split("\n") if ln]
    if not lines or lines[0] != _CSV_HEADER:
        raise InputError("unrecognized report header")
    rows = []
    for ln in lines[1:]:
        experiment, screener, n_active, reps, median, sd, se = ln.split(",")
        rows.append({
            "experiment": experiment,
            "screener": screener,
            "n_active": int(n_active),
            "replications": int(reps),
            "median": float(median),
            "sd": float(sd),
            "se": float(se),
        })
    return rows


def render_table_text(summaries) -> str:
    """Aligned human-readable rendering of the same rows as the CSV."""
    rows = [("experiment", "screener", "N#", "reps", "median", "sd", "se")]
    for s in _sorted_rows(summaries):
        rows.append((s.experiment, s.screener, str(s.n_active), str(s.replications),
                     f"{s.median:g}", f"{s.sd:.4g}", f"{s.se:.4g}"))
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows]
    return "\n".join(lines) + "\n"


def write_reports(summaries, out_dir) -> list[Path]:
    """One CSV per (experiment, screener) plus the combined table1.csv."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for s in _sorted_rows(summaries):
        path = out_dir / f"{s.experiment}_{s.screener}.csv"
        path.write_text(render_table_csv([s]), encoding="utf-8", newline="\n")
        written.append(path)
    combined = out_dir / "table1.csv"
    combined.write_text(render_table_csv(summaries), encoding="utf-8", newline="\n")
    written.append(combined)
    return written


def _resolve_threads(threads: int) -> int:
    if threads < 0:
        raise InputError(f"threads must be nonnegative, got {threads}")
    if threads == 0:
        import os

        return os.cpu_count() or 1
    return threads
