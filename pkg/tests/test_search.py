"""Sweeps, maximizer enumeration, numeric maximization, and the seeded
domination sampler."""

import math

import numpy as np
import pytest

from pohst.search import (
    RNG_NAME,
    enumerate_maximizers,
    eval_f_batch,
    maximize_f,
    pattern_from_index,
    sample_blockwise_domination,
    sample_domination,
    sweep_patterns,
    verify_pattern,
)
from pohst.triangle import eval_f, pohst_bound


def test_rng_is_named():
    assert RNG_NAME == "numpy-PCG64"


@pytest.mark.parametrize("n,idx,expected", [
    (3, 0, (1, 1, 1)),
    (3, 1, (-1, 1, 1)),
    (3, 6, (1, -1, -1)),
    (1, 1, (-1,)),
])
def test_pattern_from_index_frozen(n, idx, expected):
    assert pattern_from_index(n, idx) == expected


def test_pattern_from_index_is_a_bijection():
    pats = {pattern_from_index(4, idx) for idx in range(16)}
    assert len(pats) == 16


@pytest.mark.parametrize("pattern", [
    (1,), (-1,), (-1, 1), (-1, -1, 1, -1), (1,) * 8,
])
def test_verify_pattern_accepts(pattern):
    assert verify_pattern(pattern) is None


def test_sweep_patterns_small():
    for n in range(1, 9):
        report = sweep_patterns(n)
        assert report.n == n
        assert report.patterns_checked == 2 ** n
        assert report.failures == ()
        assert report.wall_time >= 0.0


def test_sweep_patterns_parallel_agrees():
    serial = sweep_patterns(9, jobs=1)
    parallel = sweep_patterns(9, jobs=2)
    assert serial.patterns_checked == parallel.patterns_checked == 512
    assert serial.failures == parallel.failures == ()


@pytest.mark.parametrize("n", [0, 25])
def test_sweep_patterns_rejects_bad_n(n):
    with pytest.raises(ValueError):
        sweep_patterns(n)


# ---------------------------------------------------------------------------
# maximizers


def _bitmask_maximizers(n):
    """Independent enumeration: mask bits mark -1 positions."""
    k = (n + 1) // 2
    out = []
    for mask in range(1 << n):
        if mask & (mask >> 1):
            continue
        if bin(mask).count("1") != k:
            continue
        out.append(tuple(-1 if (mask >> b) & 1 else 0 for b in range(n)))
    return set(out)


@pytest.mark.parametrize("n,expected", [
    (1, [(-1,)]),
    (3, [(-1, 0, -1)]),
    (4, [(-1, 0, -1, 0), (-1, 0, 0, -1), (0, -1, 0, -1)]),
])
def test_enumerate_maximizers_frozen(n, expected):
    assert sorted(enumerate_maximizers(n)) == sorted(expected)


def test_enumerate_maximizers_counts():
    for n in range(1, 13):
        count = len(enumerate_maximizers(n))
        assert count == (1 if n % 2 == 1 else n // 2 + 1)


def test_enumerate_maximizers_matches_bitmask():
    for n in range(1, 11):
        assert set(enumerate_maximizers(n)) == _bitmask_maximizers(n)


def test_enumerated_maximizers_attain_bound_exactly():
    for n in range(1, 11):
        for v in enumerate_maximizers(n):
            assert eval_f(v) == pohst_bound(n)


def test_enumerate_maximizers_rejects_bad_n():
    with pytest.raises(ValueError):
        enumerate_maximizers(0)


# ---------------------------------------------------------------------------
# numeric maximization


def test_eval_f_batch_matches_scalar():
    rng = np.random.default_rng(23)
    for n in (1, 3, 6):
        X = rng.uniform(-1.0, 1.0, size=(40, n))
        batch = eval_f_batch(X)
        for row, expected in zip(X, batch):
            assert math.isclose(eval_f(row), expected, rel_tol=1e-13)


def test_eval_f_batch_accepts_single_row():
    assert eval_f_batch(np.array([-1.0, 0.0, -1.0])).tolist() == [4.0]


@pytest.mark.parametrize("n,expected", [(1, 2.0), (2, 2.0), (3, 4.0)])
def test_maximize_frozen(n, expected):
    res = maximize_f(n)
    assert math.isclose(res.best_value, expected, rel_tol=1e-9)
    assert res.bound == expected
    assert res.evaluations > 0


def test_maximize_result_invariants():
    for n in range(1, 7):
        res = maximize_f(n)
        assert res.best_value <= res.bound + 1e-9
        assert all(-1.0 <= c <= 1.0 for c in res.best_point)
        # refined point sits within one grid step of a true maximizer
        near = min(max(abs(a - b) for a, b in zip(res.best_point, m))
                   for m in enumerate_maximizers(n))
        assert near <= 0.25 + 1e-12


def test_maximize_multistart_branch():
    res = maximize_f(9)
    assert math.isclose(res.best_value, pohst_bound(9), rel_tol=1e-6)
    assert "multistart" in res.method


def test_maximize_rejects_bad_arguments():
    with pytest.raises(ValueError):
        maximize_f(0)
    with pytest.raises(ValueError):
        maximize_f(3, grid_step=0.3)


# ---------------------------------------------------------------------------
# domination sampling


def test_sample_domination_accepts_and_is_deterministic():
    a = sample_domination(4, samples=5_000, seed=42)
    b = sample_domination(4, samples=5_000, seed=42)
    assert a and b and a == b


def test_sample_blockwise_domination_accepts():
    assert sample_blockwise_domination(4, samples=2_000, seed=42)
    assert sample_blockwise_domination(1, samples=500, seed=7)


@pytest.mark.parametrize("call", [
    lambda: sample_domination(0, 10),
    lambda: sample_domination(3, 0),
    lambda: sample_blockwise_domination(0, 10),
])
def test_sampling_rejects_bad_arguments(call):
    with pytest.raises(ValueError):
        call()
