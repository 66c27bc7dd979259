"""Command-line entry point: ``python -m ditile <command> ...``.

Exit codes: 0 found/pass, 1 proven absent/fail, 2 budget exhausted, 3 usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import harness
from .digraph import from_text, to_text
from .extremal import FAMILIES, make, verify
from .patterns import parse_word
from .solvers import (Budget, BudgetExhausted, count_absorbing_sets, find_cycle_list_tiling, find_factor,
                      find_oriented_hamilton, max_tiling_anytime)

FOUND, ABSENT, EXHAUSTED, USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_graph(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return from_text(text)


def _int_list(text: str) -> list[int]:
    """``4..11`` or ``3,6,9``."""
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x]


def _tiling_text(tiling) -> str:
    return "".join(f"{e.pattern} {' '.join(map(str, e.map))}\n" for e in tiling.embeddings)


# -- commands ------------------------------------------------------------------------

def cmd_gen(a) -> int:
    g = harness.generate(a.n, a.p, a.seed, a.enforce)
    note = f"gen n={a.n} p={a.p} seed={a.seed}"
    if a.enforce:
        note += f" enforce={a.enforce} repairs={len(g.repairs)}"
    _emit(to_text(g.graph, note), a.out)
    return FOUND


def cmd_solve(a) -> int:
    G = _read_graph(a.graph)
    budget = Budget(a.budget)
    modes = [x for x in (a.pattern, a.cycles, a.hamilton) if x]
    if len(modes) != 1:
        raise UsageError("give exactly one of --pattern, --cycles, --hamilton")
    try:
        if a.hamilton:
            emb = find_oriented_hamilton(G, a.hamilton, budget=budget)
            if emb is None:
                print("none")
                return ABSENT
            _emit(f"{emb.pattern} {' '.join(map(str, emb.map))}\n", a.out)
            return FOUND
        if a.cycles:
            words = [parse_word(w) for w in a.cycles.split(",")]
            tiling = find_cycle_list_tiling(G, words, spanning=not a.partial, budget=budget)
        elif a.max:
            tiling, proven = max_tiling_anytime(G, harness.parse_patterns(a.pattern), budget)
            _emit(_tiling_text(tiling), a.out)
            print(f"# tiles={tiling.size} proven={'yes' if proven else 'no'}", file=sys.stderr)
            return FOUND if proven else EXHAUSTED
        else:
            tiling = find_factor(G, harness.parse_patterns(a.pattern), budget=budget)
    except BudgetExhausted as exc:
        print(f"unknown: budget exhausted after {exc.nodes} nodes")
        return EXHAUSTED
    if tiling is None:
        print("none")
        return ABSENT
    _emit(_tiling_text(tiling), a.out)
    return FOUND


def _suite_kwargs(a) -> dict:
    kw: dict = {}
    if a.name in ("orethm", "split", "odd-cycle-factor", "ham"):
        kw["seed"] = a.seed
    if a.trials is not None:
        if a.name in ("orethm", "odd-cycle-factor", "ham"):
            kw["trials"] = a.trials
        elif a.name == "split":
            kw["count"] = a.trials
    if a.sizes and a.name == "orethm":
        kw["sizes"] = tuple(_int_list(a.sizes))
    if a.sizes and a.name == "balanced-hom":
        kw["max_len"] = max(_int_list(a.sizes))
    if a.budget is not None and a.name in ("orethm", "extremal-all", "blowup-factor", "odd-cycle-factor", "ham"):
        kw["budget"] = a.budget
    return kw


def cmd_verify(a) -> int:
    rep = harness.verify_theorem(a.name, **_suite_kwargs(a))
    text = "\n".join([rep.summary(), *rep.lines]) + "\n"
    if rep.counterexamples:
        text += "\n".join(rep.counterexamples)
    _emit(text, a.out)
    if rep.passed:
        return FOUND
    return ABSENT if rep.failures else EXHAUSTED


def cmd_sweep(a) -> int:
    params = {
        "n": a.n, "pattern": a.pattern, "axis": a.axis, "trials": a.trials,
        "values": _int_list(a.values) if a.values else None, "p": a.p, "budget": a.budget,
    }
    manifest = harness.RunManifest("sweep", params, a.seed)
    recs = harness.run_sweep(manifest, workers=a.workers)
    text = harness.records_csv(recs) if a.format == "csv" else harness.records_jsonl(recs)
    _emit(text, a.out)
    if a.out:
        Path(a.out + ".manifest.json").write_text(manifest.to_json() + "\n")
    return FOUND


def cmd_extremal(a) -> int:
    inst = make(a.family, *a.params)
    if a.out:
        Path(a.out).write_text(inst.to_text())
        Path(a.out + ".claims").write_text(inst.sidecar())
    rep = verify(inst, budget=a.budget, solver_limit=a.solver_limit) if a.verify else None
    if not a.out:
        sys.stdout.write(inst.to_text())
        sys.stdout.write(inst.sidecar())
    if rep is None:
        return FOUND
    print("\n".join(rep.lines()), file=sys.stderr if not a.out else sys.stdout)
    if rep.passed:
        return FOUND
    return ABSENT if rep.failed else EXHAUSTED


def cmd_absorb(a) -> int:
    G = _read_graph(a.graph)
    pats = harness.parse_patterns(a.pattern)
    if len(pats) != 1:
        raise UsageError("absorb-count takes a single pattern")
    try:
        c = count_absorbing_sets(G, pats[0], a.x, a.y, a.size, budget=Budget(a.budget))
    except BudgetExhausted as exc:
        print(f"unknown: budget exhausted after {exc.nodes} nodes")
        return EXHAUSTED
    _emit(f"{c}\n", a.out)
    return FOUND


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=harness.DEFAULT_BUDGET, help="search nodes per decision")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "jsonl"), default="csv")

    ap = _Parser(prog="ditile", description="Exact and constructive digraph tiling toolkit.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", parents=[common], help="random digraph, optionally repaired to a degree condition")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--enforce", default=None, help="e.g. delta0>=20, delta>=30, ore>=11")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", parents=[common], help="exact factor / cycle-list / Hamilton search")
    p.add_argument("--graph", required=True, help="digraph text file, or - for stdin")
    p.add_argument("--pattern", help="T3, FFBB, P:1,2 or a mixed set such as T3+FFF")
    p.add_argument("--cycles", help="comma-separated orientation words")
    p.add_argument("--hamilton", help="orientation word of length n")
    p.add_argument("--partial", action="store_true", help="cycles need not span")
    p.add_argument("--max", action="store_true", help="maximum tiling instead of a factor")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify-theorem", parents=[common], help="run a registered verification suite")
    p.add_argument("name", choices=sorted(harness.SUITES))
    p.add_argument("--sizes", help="orders for orethm (3,6,9) or max word length for balanced-hom")
    p.add_argument("--trials", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="factor success rate along a degree axis")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--axis", choices=harness.AXES, default="delta0")
    p.add_argument("--values", help="axis values, e.g. 4..11")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--p", type=float, default=0.3, help="edge probability of the base digraph")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("extremal", parents=[common], help="build (and verify) a lower-bound construction")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("params", type=int, nargs="+")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--solver-limit", type=int, default=16)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("absorb-count", parents=[common], help="count sets absorbing both x and y")
    p.add_argument("--graph", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(func=cmd_absorb)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    if a.budget is not None and a.budget < 1:
        ap.error("--budget must be positive")
    try:
        return a.func(a)
    except (UsageError, ValueError, OSError) as exc:
        print(f"ditile {a.command}: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
