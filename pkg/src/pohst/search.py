"""Search campaigns: exhaustive sign-pattern sweeps, maximizer
enumeration, numeric maximization of f_n, and seeded domination
sampling.

The sweep is the heart of the verification: for every one of the 2^n
sign patterns it builds a good partition, validates it independently,
audits every intermediate construction state, and (for even n with an
odd number of negative signs) checks the border parity identity.

Numeric maximization reproduces the bound 2^floor((n+1)/2) without
assuming it: a lattice search over the cube followed by per-coordinate
golden-section ascent.  The known maximizers are 0/-1 vectors, which
every grid with integer corners contains, so the interesting assertion
is that nothing anywhere else climbs higher.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Iterator, Sequence

import numpy as np

from .partition import (
    CheckResult,
    ConstructionFailure,
    audit_build,
    build_good_partition,
    parity_counts,
    validate_partition,
)
from .triangle import ABS_TOL, REL_TOL, as_sign_pattern, eval_f, pohst_bound

#: PRNG used for every sampling campaign, recorded in reports.
RNG_NAME = "numpy-PCG64"

_COARSE_STEP = 0.5
_SCREEN_KEEP = 32
_RANDOM_STARTS = 64
_MULTISTART_SEED = 42


@dataclass(frozen=True)
class SweepReport:
    n: int
    patterns_checked: int
    failures: tuple[tuple[tuple[int, ...], str], ...]
    wall_time: float


@dataclass(frozen=True)
class MaximizeResult:
    n: int
    best_value: float
    best_point: tuple[float, ...]
    bound: float
    method: str
    evaluations: int


def pattern_from_index(n: int, idx: int) -> tuple[int, ...]:
    """Deterministic pattern numbering: bit b of idx set means x_{b+1} < 0."""
    return tuple(-1 if (idx >> b) & 1 else 1 for b in range(n))


def verify_pattern(pattern: Sequence[int]) -> str | None:
    """Full verification of one sign pattern; None when everything holds.

    Builds the good partition, validates it against the shape
    definition, audits every intermediate state of the construction,
    and checks border parity when it applies.
    """
    pat = as_sign_pattern(pattern)
    try:
        gp = build_good_partition(pat)
    except ConstructionFailure as e:
        return f"construction-failure: {e}"
    r = validate_partition(gp)
    if not r:
        return f"invalid-partition: {r.reason}"
    r = audit_build(gp)
    if not r:
        return f"audit: {r.reason}"
    n = len(pat)
    if n % 2 == 0 and pat.count(-1) % 2 == 1:
        b_plus, b_minus = parity_counts(pat)
        if b_plus != b_minus:
            return f"parity: b+={b_plus} b-={b_minus}"
    return None


def _sweep_range(args: tuple[int, int, int]) -> list[tuple[int, str]]:
    n, start, stop = args
    failures = []
    for idx in range(start, stop):
        reason = verify_pattern(pattern_from_index(n, idx))
        if reason is not None:
            failures.append((idx, reason))
    return failures


def sweep_patterns(n: int, jobs: int = 1) -> SweepReport:
    """Verify all 2^n sign patterns; failures are collected, not raised."""
    if not 1 <= n <= 24:
        raise ValueError("n must be between 1 and 24")
    total = 2 ** n
    t0 = time.perf_counter()
    if jobs <= 1 or total < 256:
        found = _sweep_range((n, 0, total))
    else:
        chunk = max(1, total // (4 * jobs))
        tasks = [(n, s, min(s + chunk, total)) for s in range(0, total, chunk)]
        with get_context("fork").Pool(jobs) as pool:
            found = [f for part in pool.map(_sweep_range, tasks) for f in part]
    found.sort()
    failures = tuple((pattern_from_index(n, idx), reason) for idx, reason in found)
    return SweepReport(n, total, failures, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Maximizers


def enumerate_maximizers(n: int) -> list[tuple[int, ...]]:
    """All 0/-1 vectors with ceil(n/2) entries -1, no two adjacent.

    These are exactly the maximizers of f_n on [-1,1]^n; there is one
    for odd n and n/2 + 1 for even n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    k = (n + 1) // 2
    out = []
    for pos in itertools.combinations(range(n), k):
        if all(b - a >= 2 for a, b in zip(pos, pos[1:])):
            v = [0] * n
            for p in pos:
                v[p] = -1
            out.append(tuple(v))
    return out


def eval_f_batch(X: np.ndarray) -> np.ndarray:
    """Vectorized f_n over the rows of X; the numeric twin of eval_f."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    m, n = X.shape
    f = np.ones(m)
    for i in range(n):
        p = np.ones(m)
        for j in range(i, n):
            p = p * X[:, j]
            f = f * (1.0 - p)
    return f


def _axis_points(grid_step: float) -> np.ndarray:
    k = round(2.0 / grid_step)
    if abs(k * grid_step - 2.0) > 1e-12:
        raise ValueError("grid_step must divide the interval length 2 evenly")
    return np.linspace(-1.0, 1.0, k + 1)


def _lattice_batches(points: np.ndarray, n: int,
                     batch_rows: int = 500_000) -> Iterator[np.ndarray]:
    """The full lattice points^n in mixed-radix order, in row batches."""
    m = len(points)
    total = m ** n
    for start in range(0, total, batch_rows):
        stop = min(start + batch_rows, total)
        idx = np.arange(start, stop, dtype=np.int64)
        X = np.empty((stop - start, n))
        for c in range(n - 1, -1, -1):
            X[:, c] = points[idx % m]
            idx //= m
        yield X


def _golden_ascent(x: np.ndarray, value: float, radius: float,
                   rounds: int) -> tuple[np.ndarray, float, int]:
    """Per-coordinate golden-section ascent around x; never descends."""
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    x = x.copy()
    evals = 0
    n = len(x)
    for _ in range(rounds):
        for k in range(n):
            lo = max(-1.0, x[k] - radius)
            hi = min(1.0, x[k] + radius)

            def g(t: float) -> float:
                x[k] = t
                return eval_f(x)

            best_t, best_v = x[k], value
            for t in (lo, hi):
                v = g(t)
                evals += 1
                if v > best_v:
                    best_t, best_v = t, v
            a, b = lo, hi
            c = b - inv * (b - a)
            d = a + inv * (b - a)
            gc, gd = g(c), g(d)
            evals += 2
            for _ in range(48):
                if gc > gd:
                    b, d, gd = d, c, gc
                    c = b - inv * (b - a)
                    gc = g(c)
                else:
                    a, c, gc = c, d, gd
                    d = a + inv * (b - a)
                    gd = g(d)
                evals += 1
            for t, v in ((c, gc), (d, gd)):
                if v > best_v:
                    best_t, best_v = t, v
            x[k] = best_t
            value = best_v
    return x, value, evals


def maximize_f(n: int, grid_step: float = 0.25,
               refine_iters: int = 3) -> MaximizeResult:
    """Numerically maximize f_n over [-1,1]^n.

    n <= 8: exhaustive grid at grid_step, then golden-section ascent.
    Larger n: coarse 0.5-step lattice screen plus seeded random
    multistarts, each polished by the same coordinate ascent.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    bound = pohst_bound(n)
    evaluations = 0

    if n <= 8:
        points = _axis_points(grid_step)
        best_v = -np.inf
        best_x: np.ndarray | None = None
        for X in _lattice_batches(points, n):
            vals = eval_f_batch(X)
            evaluations += len(vals)
            top = int(np.argmax(vals))
            if vals[top] > best_v:
                best_v = float(vals[top])
                best_x = X[top].copy()
        assert best_x is not None
        x, v, used = _golden_ascent(best_x, best_v, grid_step, refine_iters)
        evaluations += used
        method = f"grid(step={grid_step})+golden-ascent(rounds={refine_iters})"
        return MaximizeResult(n, v, tuple(float(c) for c in x), bound,
                              method, evaluations)

    starts: list[tuple[float, np.ndarray]] = []
    points = _axis_points(_COARSE_STEP)
    for X in _lattice_batches(points, n):
        vals = eval_f_batch(X)
        evaluations += len(vals)
        order = np.argsort(vals)[-_SCREEN_KEEP:]
        starts.extend((float(vals[i]), X[i].copy()) for i in order)
    starts.sort(key=lambda s: -s[0])
    starts = starts[:_SCREEN_KEEP]
    rng = np.random.default_rng(_MULTISTART_SEED)
    for _ in range(_RANDOM_STARTS):
        x = rng.uniform(-1.0, 1.0, size=n)
        starts.append((eval_f(x), x))
        evaluations += 1

    best_x, best_v = None, -np.inf
    for v0, x0 in starts:
        x, v, used = _golden_ascent(x0, v0, _COARSE_STEP, refine_iters)
        evaluations += used
        if v > best_v:
            best_v, best_x = v, x
    assert best_x is not None
    method = (f"coarse-screen(step={_COARSE_STEP},keep={_SCREEN_KEEP})"
              f"+multistart({_RANDOM_STARTS})+golden-ascent(rounds={refine_iters})")
    return MaximizeResult(n, best_v, tuple(float(c) for c in best_x), bound,
                          method, evaluations)


# ---------------------------------------------------------------------------
# Domination sampling


def _sample_batches(n: int, samples: int, seed: int,
                    batch: int = 20_000) -> Iterator[tuple[int, np.ndarray]]:
    """Uniform samples of [-1,1]^n without zero entries, in batches.

    Yields (offset, X).  The stream depends only on (n, samples, seed),
    so independent consumers see identical vectors.
    """
    rng = np.random.default_rng(seed)
    produced = 0
    while produced < samples:
        m = min(batch, samples - produced)
        X = rng.uniform(-1.0, 1.0, size=(m, n))
        while True:
            zero = X == 0.0
            if not zero.any():
                break
            X[zero] = rng.uniform(-1.0, 1.0, size=int(zero.sum()))
        yield produced, X
        produced += m


def _tolerant_leq(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a <= b + np.maximum(ABS_TOL, REL_TOL * np.maximum(np.abs(a), np.abs(b)))


def sample_domination(n: int, samples: int = 100_000, seed: int = 42) -> CheckResult:
    """Seeded random check of f(v) <= f(-|v|) <= 2^floor((n+1)/2).

    Deterministic given (n, samples, seed).  On failure the witness is
    (sample index, vector).
    """
    if n < 1 or samples < 1:
        raise ValueError("need n >= 1 and samples >= 1")
    bound = pohst_bound(n)
    for offset, X in _sample_batches(n, samples, seed):
        fv = eval_f_batch(X)
        fm = eval_f_batch(-np.abs(X))
        ok = _tolerant_leq(fv, fm) & _tolerant_leq(fm, np.full_like(fm, bound))
        if not ok.all():
            bad = int(np.argmin(ok))
            return CheckResult(
                False, f"domination failed at sample {offset + bad}: "
                f"f={fv[bad]}, mirror={fm[bad]}, bound={bound}",
                (offset + bad, tuple(X[bad])))
    return CheckResult(True)


def sample_blockwise_domination(n: int, samples: int = 100_000,
                                seed: int = 42) -> CheckResult:
    """Block-level domination on the same sample stream as
    sample_domination: for every sample, every block of the certificate
    of its sign pattern dominates under the mirror vector.
    """
    if n < 1 or samples < 1:
        raise ValueError("need n >= 1 and samples >= 1")
    cache: dict[tuple[int, ...], list[tuple] ] = {}
    for offset, X in _sample_batches(n, samples, seed):
        signs = np.where(X > 0, 1, -1).astype(np.int8)
        patterns = np.unique(signs, axis=0)
        for pat_row in patterns:
            pat = tuple(int(s) for s in pat_row)
            blocks = cache.get(pat)
            if blocks is None:
                gp = build_good_partition(pat)
                blocks = [b.indices for b in gp.blocks]
                cache[pat] = blocks
            rows = np.nonzero((signs == pat_row).all(axis=1))[0]
            G = X[rows]
            M = -np.abs(G)
            for indices in blocks:
                lhs = np.ones(len(rows))
                rhs = np.ones(len(rows))
                for (i, j) in indices:
                    lhs = lhs * (1.0 - np.prod(G[:, i - 1:j], axis=1))
                    rhs = rhs * (1.0 - np.prod(M[:, i - 1:j], axis=1))
                ok = _tolerant_leq(lhs, rhs)
                if not ok.all():
                    bad = int(np.argmin(ok))
                    return CheckResult(
                        False, f"block {[tuple(t) for t in indices]} failed "
                        f"domination at sample {offset + int(rows[bad])}",
                        (offset + int(rows[bad]), tuple(G[bad])))
    return CheckResult(True)
