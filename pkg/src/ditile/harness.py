"""Random instances, verification suites, threshold sweeps and reports.

Randomness is keyed by strings: instance ``i`` of a run with seed ``s`` uses
``random.Random(f"{s}/{i}")``, so any instance can be rebuilt from (seed, index)
without replaying the others.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import __version__
from .digraph import Digraph, bits, build, degrees, min_semidegree, ore_minimum, to_text
from .patterns import (Pattern, cycle_from_word, hom_into_directed_path, is_balanced, parse_word,
                       path_blowup, transitive_tournament)
from .solvers import (Budget, BudgetExhausted, Tiling, find_cycle_list_tiling, find_factor,
                      find_oriented_hamilton)
from .validate import embedding_ok, tiling_ok

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
AXES = ("delta0", "delta", "ore")


def rng_for(seed, index) -> random.Random:
    return random.Random(f"{seed}/{index}")


# -- generation ----------------------------------------------------------------------

@dataclass(frozen=True)
class Condition:
    """A minimum-degree requirement: ``delta0`` (semi-degree), ``delta`` (total) or ``ore``."""
    kind: str
    threshold: int
    variant: str = "+-"

    def __post_init__(self):
        if self.kind not in AXES:
            raise ValueError(f"unknown condition {self.kind!r}; expected one of {AXES}")

    def feasible(self, n: int) -> bool:
        if self.kind == "delta0":
            return self.threshold <= max(n - 1, 0)
        if self.kind == "delta":
            return self.threshold <= max(2 * (n - 1), 0)
        return True  # a complete digraph has no non-edges

    def holds(self, G: Digraph) -> bool:
        if self.kind == "delta0":
            return min_semidegree(G) >= self.threshold
        if self.kind == "delta":
            return degrees(G).delta_total >= self.threshold
        m = ore_minimum(G, self.variant)
        return not isinstance(m, int) or m >= self.threshold

    def __str__(self) -> str:
        return f"{self.kind}{'' if self.kind != 'ore' else self.variant}>={self.threshold}"


def parse_condition(text: str) -> Condition:
    """``delta0>=20``, ``delta>=30``, ``ore>=11`` or ``ore--=11`` style strings."""
    key, _, value = text.replace(" ", "").partition(">=")
    if not value:
        raise ValueError(f"condition {text!r} must look like 'delta0>=k'")
    if key.startswith("ore"):
        return Condition("ore", int(value), key[3:] or "+-")
    return Condition(key, int(value))


class _Pool:
    """Random choice from a list whose valid members only ever disappear."""

    def __init__(self, items, rng: random.Random):
        self.items = list(items)
        self.rng = rng

    def draw(self, valid):
        while self.items:
            i = self.rng.randrange(len(self.items))
            item = self.items[i]
            if valid(item):
                return item
            self.items[i] = self.items[-1]
            self.items.pop()
        return None


def repair(G: Digraph, cond: Condition, rng: random.Random) -> tuple[Digraph, list[tuple[int, int]]]:
    """Add uniformly random helpful missing edges until ``cond`` holds.

    For degree conditions an edge is helpful when it raises a deficient
    degree; for the Ore condition a violating non-edge xy is drawn first and
    then a missing out-edge of x or in-edge of y.  Both candidate sets only
    shrink as edges are added, so invalid entries are discarded lazily.
    """
    if not cond.feasible(G.n):
        raise ValueError(f"condition {cond} cannot hold on {G.n} vertices")
    n, t = G.n, cond.threshold
    full = (1 << n) - 1
    out_rows, in_rows = list(G.out_adj), list(G.in_adj)
    out_deg = [r.bit_count() for r in out_rows]
    in_deg = [r.bit_count() for r in in_rows]
    added: list[tuple[int, int]] = []

    def add(u: int, v: int) -> None:
        out_rows[u] |= 1 << v
        in_rows[v] |= 1 << u
        out_deg[u] += 1
        in_deg[v] += 1
        added.append((u, v))

    def missing(u: int, v: int) -> bool:
        return not out_rows[u] >> v & 1

    if cond.kind == "ore":
        first = out_deg if cond.variant[0] == "+" else in_deg
        second = out_deg if cond.variant[1] == "+" else in_deg
        pool = _Pool(((x, y) for x in range(n) for y in bits(full & ~out_rows[x] & ~(1 << x))
                      if first[x] + second[y] < t), rng)
        while (pair := pool.draw(lambda e: missing(*e) and first[e[0]] + second[e[1]] < t)) is not None:
            x, y = pair
            cands = sorted({(x, v) for v in bits(full & ~out_rows[x] & ~(1 << x))}
                           | {(u, y) for u in bits(full & ~in_rows[y] & ~(1 << y))})
            add(*rng.choice(cands))
    else:
        if cond.kind == "delta0":
            lack_out = lambda v: out_deg[v] < t
            lack_in = lambda v: in_deg[v] < t
        else:
            lack_out = lack_in = lambda v: out_deg[v] + in_deg[v] < t
        cands = set()
        for v in range(n):
            if lack_out(v):
                cands.update((v, u) for u in bits(full & ~out_rows[v] & ~(1 << v)))
            if lack_in(v):
                cands.update((u, v) for u in bits(full & ~in_rows[v] & ~(1 << v)))
        pool = _Pool(sorted(cands), rng)
        while (e := pool.draw(lambda e: missing(*e) and (lack_out(e[0]) or lack_in(e[1])))) is not None:
            add(*e)
    H = build(n, [(u, v) for u in range(n) for v in bits(out_rows[u])], G.loop_list())
    if added:
        log.debug("repair %s: added %d edges", cond, len(added))
    return H, added


def sample_gnp(n: int, p: float, rng: random.Random) -> Digraph:
    if not 0 <= p <= 1:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    return build(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])


@dataclass
class Generated:
    graph: Digraph
    repairs: list[tuple[int, int]] = field(default_factory=list)


def generate(n: int, p: float, seed=None, enforce: Condition | str | None = None,
             rng: random.Random | None = None) -> Generated:
    rng = rng or random.Random(seed)
    cond = parse_condition(enforce) if isinstance(enforce, str) else enforce
    if cond is not None and not cond.feasible(n):
        raise ValueError(f"condition {cond} cannot hold on {n} vertices")
    G = sample_gnp(n, p, rng)
    if cond is None:
        return Generated(G)
    H, added = repair(G, cond, rng)
    return Generated(H, added)


def gen_random(n: int, p: float, seed=None, enforce: Condition | str | None = None) -> Digraph:
    """G(n, p) digraph, repaired by edge additions until ``enforce`` holds."""
    return generate(n, p, seed, enforce).graph


# -- pattern specs -------------------------------------------------------------------

def parse_patterns(spec: str) -> list[Pattern]:
    """``T3``, an orientation word such as ``FFBB``, ``P:2,1,2`` (path blow-up), joined by ``+``."""
    out = []
    for part in spec.split("+"):
        part = part.strip()
        if not part:
            raise ValueError(f"empty pattern in {spec!r}")
        if part[0] in "Tt" and part[1:].isdigit():
            out.append(transitive_tournament(int(part[1:])))
        elif part[:2].upper() == "P:":
            out.append(path_blowup([int(x) for x in part[2:].split(",")]))
        else:
            out.append(cycle_from_word(part))
    return out


# -- reports -------------------------------------------------------------------------

@dataclass
class SuiteReport:
    name: str
    passed: bool
    total: int = 0
    failures: int = 0
    unknown: int = 0
    lines: list[str] = field(default_factory=list)
    counterexamples: list[str] = field(default_factory=list)

    def summary(self) -> str:
        return (f"{self.name}: {'PASS' if self.passed else 'FAIL'} "
                f"({self.total} checks, {self.failures} failures, {self.unknown} unknown)")


def _fail(rep: SuiteReport, what: str, G: Digraph | None = None) -> None:
    rep.failures += 1
    rep.lines.append("FAIL " + what)
    if G is not None:
        rep.counterexamples.append(to_text(G, what))


def suite_orethm(sizes=(3, 6, 9, 12), trials: int = 200, seed=0, budget=DEFAULT_BUDGET) -> SuiteReport:
    """Ore-type condition d+(x)+d-(y) >= 4n/3-1 on non-edges: mixed factor, then augmentation."""
    from .constructive.augment import HypothesisViolation, is_t3_factor, seed_factor, t3_augment

    rep = SuiteReport("orethm", True)
    for n in sizes:
        thr = math.ceil(Fraction(4 * n, 3) - 1)
        steps_max = 0
        for i in range(trials):
            rng = rng_for(seed, f"orethm/{n}/{i}")
            p = rng.choice((0.2, 0.4, 0.6, 0.8))
            G = generate(n, p, enforce=Condition("ore", thr), rng=rng).graph
            rep.total += 1
            try:
                start = seed_factor(G, prefer_cycles=bool(i % 2 == 0), budget=Budget(budget))
            except BudgetExhausted:
                rep.unknown += 1
                continue
            if start is None or not tiling_ok(G, start, spanning=True):
                _fail(rep, f"n={n} instance {i}: no {{T3,C3}}-factor", G)
                continue
            try:
                trace = t3_augment(G, start)
            except HypothesisViolation as exc:
                _fail(rep, f"n={n} instance {i}: {exc}", G)
                continue
            steps_max = max(steps_max, len(trace.steps))
            if len(trace.steps) > n // 3 or not is_t3_factor(G, trace.final):
                _fail(rep, f"n={n} instance {i}: bad augmentation ({len(trace.steps)} steps)", G)
        rep.lines.append(f"n={n} threshold={thr} trials={trials} max_steps={steps_max}")
    rep.passed = rep.failures == 0 and rep.unknown == 0
    return rep


def suite_balanced_hom(max_len: int = 10) -> SuiteReport:
    rep = SuiteReport("balanced-hom", True)
    for ell in range(3, max_len + 1):
        bad = 0
        for letters in itertools.product("FB", repeat=ell):
            w = "".join(letters)
            rep.total += 1
            lm = hom_into_directed_path(cycle_from_word(w))
            if (lm is not None) != is_balanced(w):
                bad += 1
                _fail(rep, f"word {w}: balanced={is_balanced(w)} hom={lm is not None}")
        rep.lines.append(f"length {ell}: {2 ** ell} words, {bad} disagreements")
    rep.passed = rep.failures == 0
    return rep


def suite_extremal(budget=DEFAULT_BUDGET, solver_limit: int = 16) -> SuiteReport:
    from .extremal import SMALLEST, make, verify

    rep = SuiteReport("extremal-all", True)
    for fam, params in SMALLEST:
        r = verify(make(fam, *params), budget=budget, solver_limit=solver_limit)
        rep.total += 1
        rep.lines.extend(r.lines())
        if not r.passed:
            _fail(rep, f"{fam}{params}")
    rep.passed = rep.failures == 0
    return rep


def suite_blowup_factor(cases=((2, 2), (2, 4), (3, 3)), budget=DEFAULT_BUDGET) -> SuiteReport:
    from .constructive.tournaments import blowup_factor

    rep = SuiteReport("blowup-factor", True)
    for r, t in cases:
        for plus_one in (False, True):
            B, tiling = blowup_factor(r, t, plus_one)
            rep.total += 1
            ok = (tiling_ok(B, tiling, spanning=True)
                  and all(e.pattern.order == r for e in tiling.embeddings))
            solver = find_factor(B, transitive_tournament(r), budget=Budget(budget))
            label = f"T{r + plus_one}({t}) -> T{r}-factor"
            rep.lines.append(f"{label}: expansion {'ok' if ok else 'BAD'}, "
                             f"solver {'found' if solver is not None else 'none'}")
            if not ok or solver is None:
                _fail(rep, label, B)
    rep.passed = rep.failures == 0
    return rep


def suite_split(count: int = 100, seed=0, retries: int = 100, min_rate: float = 0.95) -> SuiteReport:
    from .constructive.cycles import SplitFailure, random_split, semidegree_in

    rep = SuiteReport("split", True)
    ok = 0
    for i in range(count):
        rng = rng_for(seed, f"split/{i}")
        n = rng.randint(50, 100)
        p = rng.choice((0.6, 0.8))
        G = sample_gnp(n, p, rng)
        m = n // 2
        rep.total += 1
        try:
            sp = random_split(G, m, retries, rng=rng)
        except SplitFailure:
            rep.lines.append(f"instance {i}: n={n} p={p} no split within {retries}")
            continue
        d0 = min_semidegree(G)
        for U in (sp.U1, sp.U2):
            u = U.bit_count()
            # literal inequality, evaluated in floating point as a human would
            if not semidegree_in(G, U) >= d0 / n * u - u ** (2 / 3) - 1e-9:
                _fail(rep, f"instance {i}: accepted split violates the bound", G)
        ok += 1
    rate = ok / count if count else 1.0
    rep.lines.append(f"success within {retries} retries: {ok}/{count} = {rate:.3f}")
    rep.passed = rep.failures == 0 and rate >= min_rate
    return rep


def suite_odd_cycle_factor(n: int = 15, k: int = 2, words=("FFFFF", "FFBFB"), trials: int = 50, seed=0,
                slack: float = 0.15, min_rate: float = 0.9, budget=DEFAULT_BUDGET) -> SuiteReport:
    """Spanning tilings by copies of one (2k+1)-cycle above the semi-degree threshold, and the extremal gap."""
    from .extremal import tripartite_odd

    ell = 2 * k + 1
    thr = math.ceil((Fraction(k + 1, ell) + Fraction(slack).limit_denominator(1000)) * n)
    rep = SuiteReport("odd-cycle-factor", True)
    for w in words:
        ok = exhausted = 0
        for i in range(trials):
            rng = rng_for(seed, f"odd-cycle-factor/{w}/{i}")
            G = generate(n, rng.choice((0.3, 0.5, 0.7)), enforce=Condition("delta0", thr), rng=rng).graph
            rep.total += 1
            try:
                t = find_cycle_list_tiling(G, [w] * (n // ell), budget=Budget(budget))
            except BudgetExhausted:
                exhausted += 1
                continue
            if t is not None:
                if not tiling_ok(G, t, spanning=True):
                    _fail(rep, f"{w} instance {i}: invalid tiling", G)
                ok += 1
        rep.unknown += exhausted
        rate = ok / trials
        rep.lines.append(f"{w}: delta0>={thr}: {ok}/{trials} tiled ({rate:.2f}), {exhausted} exhausted")
        if rate < min_rate:
            _fail(rep, f"{w}: success rate {rate:.2f} < {min_rate}")
    ext = tripartite_odd(n, k)
    for w in words:
        rep.total += 1
        t = find_cycle_list_tiling(ext.graph, [w] * (n // ell), budget=Budget(budget))
        rep.lines.append(f"tripartite_odd({n},{k}) delta0={min_semidegree(ext.graph)} {w}: "
                         f"{'tiled' if t else 'none'}")
        if t is not None:
            _fail(rep, f"extremal instance admits a {w} tiling", ext.graph)
    rep.passed = rep.failures == 0
    return rep


def suite_ham(n: int = 10, d0: int = 6, trials: int = 20, seed=0, budget=DEFAULT_BUDGET) -> SuiteReport:
    rep = SuiteReport("ham", True)
    for i in range(trials):
        rng = rng_for(seed, f"ham/{i}")
        G = generate(n, 0.5, enforce=Condition("delta0", d0), rng=rng).graph
        w = "".join(rng.choice("FB") for _ in range(n))
        rep.total += 1
        try:
            e = find_oriented_hamilton(G, w, budget=Budget(budget))
        except BudgetExhausted:
            rep.unknown += 1
            continue
        if e is None or not embedding_ok(G, e.pattern.graph, e.map):
            _fail(rep, f"instance {i}: no Hamilton cycle with word {w}", G)
    rep.passed = rep.failures == 0 and rep.unknown == 0
    return rep


SUITES = {
    "orethm": suite_orethm,
    "balanced-hom": suite_balanced_hom,
    "extremal-all": suite_extremal,
    "blowup-factor": suite_blowup_factor,
    "split": suite_split,
    "odd-cycle-factor": suite_odd_cycle_factor,
    "ham": suite_ham,
}


def verify_theorem(name: str, **kwargs) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    return SUITES[name](**kwargs)


# -- sweeps --------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRecord:
    n: int
    family: str
    pattern: str
    param: int
    trials: int
    success: int
    exhausted: int

    @property
    def failures(self) -> int:
        return self.trials - self.success - self.exhausted

    @property
    def rate(self) -> float:
        return self.success / self.trials if self.trials else 0.0


FIELDS = ("n", "family", "pattern", "param", "trials", "success", "exhausted")


@dataclass(frozen=True)
class SweepConfig:
    n: int
    pattern: str
    axis: str = "delta0"
    values: tuple[int, ...] | None = None
    trials: int = 50
    seed: int = 0
    p: float = 0.3
    budget: int | None = DEFAULT_BUDGET

    def axis_values(self) -> tuple[int, ...]:
        if self.values is not None:
            return tuple(sorted(self.values))
        top = {"delta0": self.n - 1, "delta": 2 * self.n - 2, "ore": 2 * self.n - 3}[self.axis]
        return tuple(range(0, top + 1))


def chain_instance(cfg: SweepConfig, trial: int, value: int) -> Digraph:
    """Instance of a sweep at (trial, value), rebuilt from the seed alone."""
    for v, G in _chain(cfg, trial):
        if v == value:
            return G
    raise ValueError(f"{value} is not on the axis")


def _chain(cfg: SweepConfig, trial: int):
    # one coupled chain per trial: start from G(n, p) and only ever add edges
    rng = rng_for(cfg.seed, f"sweep/{cfg.n}/{cfg.pattern}/{cfg.axis}/{trial}")
    G = sample_gnp(cfg.n, cfg.p, rng)
    for v in cfg.axis_values():
        G, _ = repair(G, Condition(cfg.axis, v), rng)
        yield v, G


def _run_chain(cfg: SweepConfig, trial: int) -> list[tuple[int, str]]:
    pats = parse_patterns(cfg.pattern)
    out = []
    found: Tiling | None = None
    for v, G in _chain(cfg, trial):
        if found is not None and tiling_ok(G, found, spanning=True):
            # the chain only adds edges, so an earlier factor is still a factor
            out.append((v, "found"))
            continue
        try:
            found = find_factor(G, pats, budget=Budget(cfg.budget))
            out.append((v, "found" if found is not None else "none"))
        except BudgetExhausted:
            out.append((v, "exhausted"))
    return out


def _chain_job(args):
    return args[1], _run_chain(*args)


def sweep(n: int, pattern: str, axis: str = "delta0", trials: int = 50, seed: int = 0,
          values=None, p: float = 0.3, budget: int | None = DEFAULT_BUDGET, workers: int = 1) -> list[SweepRecord]:
    """Success rates of exact factor search along a minimum-degree axis."""
    if axis not in AXES:
        raise ValueError(f"unknown axis {axis!r}; expected one of {AXES}")
    if budget is not None and budget < 1:
        raise ValueError("budget must be positive")
    pats = parse_patterns(pattern)
    if len(pats) == 1 and n % pats[0].order:
        raise ValueError(f"pattern order {pats[0].order} does not divide n={n}")
    cfg = SweepConfig(n, pattern, axis, tuple(values) if values is not None else None, trials, seed, p, budget)
    jobs = [(cfg, t) for t in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_chain_job, jobs))
    else:
        results = [_chain_job(j) for j in jobs]
    results.sort()
    counts = {v: [0, 0] for v in cfg.axis_values()}
    for _, outcomes in results:
        for v, what in outcomes:
            if what == "found":
                counts[v][0] += 1
            elif what == "exhausted":
                counts[v][1] += 1
    return [SweepRecord(n, f"random-{axis}", pattern, v, trials, s, e) for v, (s, e) in counts.items()]


def is_monotone(records: list[SweepRecord]) -> bool:
    rates = [r.rate for r in sorted(records, key=lambda r: r.param)]
    return all(a <= b for a, b in zip(rates, rates[1:]))


def records_csv(records: list[SweepRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in records:
        w.writerow([getattr(r, f) for f in FIELDS])
    return buf.getvalue()


def records_jsonl(records: list[SweepRecord]) -> str:
    return "".join(json.dumps({f: getattr(r, f) for f in FIELDS}) + "\n" for r in records)


def read_records(text: str, fmt: str = "csv") -> list[SweepRecord]:
    if fmt == "csv":
        rows = list(csv.DictReader(io.StringIO(text)))
    else:
        rows = [json.loads(ln) for ln in text.splitlines() if ln.strip()]
    return [SweepRecord(int(r["n"]), r["family"], r["pattern"], int(r["param"]), int(r["trials"]),
                        int(r["success"]), int(r["exhausted"])) for r in rows]


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: int
    version: str = __version__
    wall_time: float = 0.0
    outcomes: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        return cls(**json.loads(text))


def run_sweep(manifest: RunManifest, workers: int = 1) -> list[SweepRecord]:
    """Execute a sweep manifest, filling in timing and outcome counts."""
    t0 = time.perf_counter()
    recs = sweep(seed=manifest.seed, workers=workers, **manifest.parameters)
    manifest.wall_time = round(time.perf_counter() - t0, 3)
    manifest.outcomes = {
        "success": sum(r.success for r in recs),
        "exhausted": sum(r.exhausted for r in recs),
        "failure": sum(r.failures for r in recs),
    }
    return recs


__all__ = [
    "Condition", "parse_condition", "repair", "sample_gnp", "generate", "gen_random", "Generated",
    "parse_patterns", "SuiteReport", "SUITES", "verify_theorem", "SweepRecord", "SweepConfig",
    "chain_instance", "sweep", "is_monotone", "records_csv", "records_jsonl", "read_records",
    "RunManifest", "run_sweep", "rng_for",
]
