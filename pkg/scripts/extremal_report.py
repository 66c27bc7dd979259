"""Build and verify every lower-bound construction at its smallest parameters."""
import argparse
from pathlib import Path

from ditile.extremal import SMALLEST, make, verify

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=None, help="directory for graph files and .claims sidecars")
    ap.add_argument("--extra", action="store_true", help="also check larger instances structurally")
    a = ap.parse_args()
    todo = list(SMALLEST)
    if a.extra:
        todo += [("two_cliques", (40, 3)), ("tripartite_odd", (45, 2)), ("ore_t3", (60,)),
                 ("r_partite_tr", (40, 4)), ("elzahar_tripartite", (41, 5))]
    bad = 0
    for fam, params in todo:
        inst = make(fam, *params)
        rep = verify(inst)
        bad += not rep.passed
        print("\n".join(rep.lines()))
        if a.out:
            d = Path(a.out)
            d.mkdir(parents=True, exist_ok=True)
            stem = d / f"{fam}_{'_'.join(map(str, params))}.txt"
            stem.write_text(inst.to_text())
            stem.with_suffix(".txt.claims").write_text(inst.sidecar())
    print(f"{len(todo) - bad}/{len(todo)} instances verified")
    raise SystemExit(1 if bad else 0)
