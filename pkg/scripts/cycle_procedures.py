"""Empirical success rates of the round-based and recursive cycle tilers.

Hosts are random digraphs repaired up to a semi-degree bound; every tiling
returned is checked with the independent validator.
"""
import argparse
import time
from collections import Counter

from ditile.constructive import (PackingFailure, QSpec, RecursionFailure, recursive_cycle_partition,
                                 round_cycle_tiling)
from ditile.harness import gen_random
from ditile.solvers import BudgetExhausted
from ditile.validate import tiling_ok


def rounds(n, d0, words, R, trials, seed):
    spec, why = QSpec(words), Counter()
    for i in range(trials):
        G = gen_random(n, 0.5, seed=f"{seed}/round/{i}", enforce=f"delta0>={d0}")
        try:
            t = round_cycle_tiling(G, spec, R, seed=i)
            why["ok" if tiling_ok(G, t) and len(t) == R * len(words) else "invalid"] += 1
        except PackingFailure as exc:
            why[exc.stage] += 1
        except BudgetExhausted:
            why["exhausted"] += 1
    return why


def recursive(n, d0, words, eta, trials, seed):
    why = Counter()
    for i in range(trials):
        G = gen_random(n, 0.5, seed=f"{seed}/rec/{i}", enforce=f"delta0>={d0}")
        try:
            t = recursive_cycle_partition(G, words, eta=eta, seed=i)
            why["ok" if tiling_ok(G, t, spanning=True) else "invalid"] += 1
        except RecursionFailure as exc:
            why[exc.reason] += 1
        except BudgetExhausted:
            why["exhausted"] += 1
    return why


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    jobs = [
        ("rounds n=60 d0=38 R=2", lambda: rounds(60, 38, ("FFF", "FBF", "FFFF", "FFBB"), 2, a.trials, a.seed)),
        ("rounds n=60 d0=42 R=3", lambda: rounds(60, 42, ("FFFFF", "FBFBF"), 3, a.trials, a.seed)),
        ("recursive n=40 d0=28 4x10", lambda: recursive(40, 28, ["FFFFFFFFFF", "FBFBFBFBFB", "FFBBFFBBFB", "FFFFFBBBBB"],
                                                      0.15, a.trials, a.seed)),
        ("recursive n=30 d0=20 mixed", lambda: recursive(30, 20, ["FFF"] * 4 + ["FFBB"] * 2 + ["FBFBFFBBFF"],
                                                       0.15, a.trials, a.seed)),
    ]
    for label, job in jobs:
        t = time.perf_counter()
        why = job()
        print(f"{label}: {why['ok']}/{a.trials} ok  {dict(why)}  ({time.perf_counter() - t:.1f}s)")
