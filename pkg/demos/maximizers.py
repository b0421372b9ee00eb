"""Where f_n attains its bound, exactly and numerically.

The maximizers of f_n on [-1,1]^n are the 0/-1 vectors with
ceil(n/2) entries equal to -1, no two adjacent: a single vector for
odd n, n/2 + 1 of them for even n.  The demo enumerates them, checks
each attains 2^floor((n+1)/2) exactly, and cross-checks with a blind
numerical maximization that knows nothing about the characterization.

Run: python demos/maximizers.py
"""

from pohst import enumerate_maximizers, eval_f, maximize_f, pohst_bound

print("exact maximizers (0 shown as '.', -1 as 'N'):")
for n in range(1, 9):
    vs = enumerate_maximizers(n)
    picture = ["".join(".N"[-x] for x in v) for v in vs]
    print(f"  n={n}: {len(vs)} maximizer(s)  {' '.join(picture)}")
    for v in vs:
        assert eval_f(v) == pohst_bound(n)
print()

print("numerical search, blind to the characterization:")
print(f"{'n':>3s} {'bound':>8s} {'best found':>18s} {'gap':>9s} {'evals':>9s}")
for n in range(1, 7):
    r = maximize_f(n, grid_step=0.25)
    gap = r.bound - r.best_value
    print(f"{n:3d} {r.bound:8.1f} {r.best_value:18.12f} {gap:9.2e}"
          f" {r.evaluations:9d}")
    assert gap <= 1e-9
    point = tuple(round(x) for x in r.best_point)
    assert point in enumerate_maximizers(n)
print()
print("every numeric optimum rounds to one of the enumerated maximizers")
print()
print("ok: the bound is attained exactly there and nowhere the search looked")
