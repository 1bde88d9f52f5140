from __future__ import annotations

import numpy as np
import pytest

from fmvscreen import (
    Dataset,
    InputError,
    ResponseKind,
    default_selection_size,
    fmv_hat,
    fmv_scores,
    screen,
)


def make_dataset(n=60, p=5, seed=0, kind=ResponseKind.CONTINUOUS):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, p))
    y = x[:, 0] + 0.5 * rng.normal(size=n)
    return Dataset(y=y, x=x, kind=kind)


def test_constant_predictor_scores_zero() -> None:
    rng = np.random.default_rng(1)
    y = rng.normal(size=50)
    score = fmv_hat(np.full(50, 3.0), y, schemes=[3, 4])
    assert score.fused == 0.0
    assert not score.degenerate
    assert np.array_equal(score.per_scheme, [0.0, 0.0])


def test_categorical_uses_single_partition() -> None:
    rng = np.random.default_rng(2)
    y = np.repeat([0.0, 1.0, 2.0], 20)
    x = rng.normal(size=60) + y
    score = fmv_hat(x, y, kind=ResponseKind.CATEGORICAL, schemes=[3, 4, 5])
    assert score.per_scheme.shape == (1,)
    assert 0.0 < score.fused <= 1.0


def test_constant_response_flags_degenerate() -> None:
    rng = np.random.default_rng(3)
    x = rng.normal(size=40)
    score = fmv_hat(x, np.zeros(40), schemes=[3, 4])
    assert score.fused == 0.0
    assert score.degenerate


def test_dependent_beats_noise_in_seeded_trials() -> None:
    wins = 0
    for trial in range(100):
        rng = np.random.default_rng(1000 + trial)
        y = rng.standard_normal(200)
        noise = rng.standard_normal(200)
        dependent = fmv_hat(y, y).fused
        independent = fmv_hat(noise, y).fused
        wins += dependent > independent
    assert wins >= 99


def test_screen_copy_noise_constant_columns() -> None:
    rng = np.random.default_rng(4)
    y = rng.standard_normal(100)
    x = np.column_stack([y, rng.standard_normal(100), np.full(100, 2.0)])
    result = screen(Dataset(y=y, x=x), schemes=[3, 4], d_n=2)
    assert 0 in result.selected  # the copy column survives
    assert result.order[-1] == 2  # constant column ranks last
    assert result.scores[2] == 0.0


def test_screen_selects_all_when_dn_exceeds_p() -> None:
    ds = make_dataset()
    result = screen(ds, schemes=[3], d_n=50)
    assert len(result.selected) == ds.p
    assert sorted(result.order.tolist()) == list(range(ds.p))


def test_screen_column_permutation_equivariance() -> None:
    ds = make_dataset(p=8, seed=5)
    base = screen(ds, schemes=[3, 4], d_n=3)
    perm = np.random.default_rng(6).permutation(8)
    permuted = screen(Dataset(y=ds.y, x=ds.x[:, perm]), schemes=[3, 4], d_n=3)
    assert np.array_equal(permuted.scores, base.scores[perm])


def test_monotone_predictor_transform_leaves_scores() -> None:
    rng = np.random.default_rng(7)
    y = rng.standard_normal(120)
    x = y + rng.standard_normal(120)
    base = fmv_hat(x, y).fused
    assert abs(fmv_hat(x ** 3, y).fused - base) <= 1e-12
    assert abs(fmv_hat(np.exp(x), y).fused - base) <= 1e-12


def test_monotone_response_transform_is_bit_identical() -> None:
    rng = np.random.default_rng(8)
    y = rng.standard_normal(120)
    x = rng.standard_normal((120, 4)) + y[:, None]
    base, _, _ = fmv_scores(x, y, schemes=[3, 4, 5])
    cubed, _, _ = fmv_scores(x, y ** 3, schemes=[3, 4, 5])
    assert np.array_equal(base, cubed)


def test_row_permutation_is_bit_identical() -> None:
    rng = np.random.default_rng(9)
    y = np.round(rng.standard_normal(80), 1)  # ties included
    x = rng.standard_normal((80, 6))
    x[:, 3] = np.round(x[:, 3], 1)
    base, _, _ = fmv_scores(x, y, schemes=[3, 4])
    perm = rng.permutation(80)
    shuffled, _, _ = fmv_scores(x[perm], y[perm], schemes=[3, 4])
    assert np.array_equal(base, shuffled)


def test_screen_deterministic_and_thread_invariant() -> None:
    ds = make_dataset(n=80, p=40, seed=10)
    a = screen(ds, schemes=[3, 4], d_n=5, threads=1)
    b = screen(ds, schemes=[3, 4], d_n=5, threads=1)
    c = screen(ds, schemes=[3, 4], d_n=5, threads=3)
    assert np.array_equal(a.scores, b.scores)
    assert np.array_equal(a.order, b.order)
    assert np.array_equal(a.scores, c.scores)
    assert np.array_equal(a.order, c.order)


def test_tie_break_is_ascending_index() -> None:
    # two identical columns produce exactly equal scores
    rng = np.random.default_rng(11)
    y = rng.standard_normal(60)
    col = rng.standard_normal(60)
    ds = Dataset(y=y, x=np.column_stack([col, col]))
    result = screen(ds, schemes=[3], d_n=1)
    assert result.scores[0] == result.scores[1]
    assert result.order[0] == 0 and result.selected[0] == 0


def test_dataset_validation() -> None:
    rng = np.random.default_rng(12)
    x = rng.normal(size=(30, 3))
    y = rng.normal(size=30)
    bad = x.copy()
    bad[4, 1] = np.nan
    with pytest.raises(InputError, match="column 1"):
        Dataset(y=y, x=bad)
    with pytest.raises(InputError):
        Dataset(y=y[:-1], x=x)
    with pytest.raises(InputError):
        Dataset(y=np.array([0.5, 1.0] * 15), x=x, kind=ResponseKind.COUNT)
    with pytest.raises(InputError):
        Dataset(y=y, x=x, names=("a", "b"))
    with pytest.raises(InputError):
        screen(make_dataset(), schemes=[3], d_n=0)


def test_default_selection_size() -> None:
    assert default_selection_size(200) == 38  # ceil(200 / log 200)
