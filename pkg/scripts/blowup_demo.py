"""Grow T_r-tilings of blow-ups and print how the covered fraction evolves."""
from ditile.constructive import blowup_factor, blowup_iterate
from ditile.digraph import build
from ditile.patterns import transitive_tournament
from ditile.solvers import find_factor
from ditile.validate import tiling_ok

if __name__ == "__main__":
    for r, t in ((2, 2), (2, 4), (3, 3)):
        for plus_one in (False, True):
            B, tiling = blowup_factor(r, t, plus_one)
            solver = find_factor(B, transitive_tournament(r)) is not None
            print(f"T{r + plus_one}({t}): {tiling.size} copies of T{r}, valid={tiling_ok(B, tiling, spanning=True)}, "
                  f"solver agrees={solver}")

    k, gamma, r = 6, 0.4, 2
    edges = [(0, v) for v in range(1, k)] + [(u, v) for u in range(1, k) for v in range(1, k) if u != v]
    R = build(k, edges, loops=range(1, k))
    for s in (1, 2, 3, 4):
        res = blowup_iterate(R, r, s, gamma, exact_limit=0)
        frac = " -> ".join(f"{float(f):.3f}" for f in res.fractions)
        print(f"s={s}: n={res.graph.n} hypotheses={res.hypotheses} covered={res.tiling.coverage()} fractions {frac}")
