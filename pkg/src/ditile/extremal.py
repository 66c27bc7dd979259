"""Lower-bound constructions for tiling thresholds, with machine-checked claims.

Each generator returns an :class:`ExtremalInstance` that carries the digraph,
the exact degree statistics it is supposed to have, the tilings it is supposed
to lack, and a structural certificate of that absence when one exists.
:func:`verify` re-derives everything from the digraph itself.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .digraph import (Digraph, build, class_masks, complete_digraph, complete_multipartite, degrees,
                      disjoint_union, ore_minimum, to_text, weak_components, bits)
from .patterns import Pattern, cycle_from_word, transitive_tournament, word_classes
from .solvers import Budget, BudgetExhausted, find_cycle_list_tiling, find_factor


@dataclass(frozen=True)
class DegreeClaim:
    stat: str
    op: str  # "==" or ">="
    value: int

    def holds(self, actual: int) -> bool:
        return actual == self.value if self.op == "==" else actual >= self.value

    def __str__(self) -> str:
        return f"{self.stat}{self.op}{self.value}"


@dataclass(frozen=True)
class Absence:
    """A tiling claimed not to exist: a factor by ``patterns`` or a spanning cycle list ``words``."""
    label: str
    patterns: tuple[Pattern, ...] = ()
    words: tuple[str, ...] = ()


@dataclass(frozen=True)
class Certificate:
    """Structural reason for absence.

    kind ``components``: every weak component has order not divisible by ``h``
    (no factor by any connected pattern of order h).
    kind ``independent``: ``mask`` is an independent set larger than ``capacity``,
    the most vertices of it the claimed tiles can use together.
    kind ``isolated``: vertex ``vertex`` has an independent neighbourhood, so it
    lies in no tournament on 3 vertices.
    """
    kind: str
    h: int = 0
    mask: int = 0
    capacity: int = 0
    vertex: int = -1


@dataclass
class ExtremalInstance:
    graph: Digraph
    family: str
    params: dict[str, int]
    claims: list[DegreeClaim]
    absent: list[Absence]
    certificate: Certificate | None = None
    sizes: tuple[int, ...] = ()

    def sidecar(self) -> str:
        lines = [f"family={self.family}", f"n={self.graph.n}"]
        lines += [f"{k}={v}" for k, v in self.params.items() if k != "n"]
        if self.sizes:
            lines.append("sizes=" + ",".join(map(str, self.sizes)))
        lines += [f"claim.{c.stat}{'' if c.op == '==' else '.min'}={c.value}" for c in self.claims]
        lines += [f"absent={a.label}" for a in self.absent]
        if self.certificate:
            lines.append(f"certificate={self.certificate.kind}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        return to_text(self.graph, f"{self.family} " + " ".join(f"{k}={v}" for k, v in self.params.items()))


def _stat(G: Digraph, name: str) -> int | str:
    if name == "delta_total":
        return degrees(G).delta_total
    if name == "delta0":
        return degrees(G).delta_semi
    if name.startswith("ore"):
        return ore_minimum(G, name[3:])
    raise ValueError(f"unknown statistic {name!r}")


# -- constructions -------------------------------------------------------------------

def two_cliques(n: int, h: int) -> ExtremalInstance:
    """Disjoint complete digraphs whose orders are both indivisible by h."""
    if h < 2 or n < 2 * h:
        raise ValueError(f"need h >= 2 and n >= 2h, got n={n}, h={h}")
    a = next((a for a in range(n // 2, 0, -1) if a % h and (n - a) % h), None)
    if a is None:
        raise ValueError(f"no split of {n} into two orders indivisible by {h}")
    b = n - a
    G = disjoint_union(complete_digraph(a), complete_digraph(b))
    absent = [Absence(f"factor:T{h}", (transitive_tournament(h),))]
    if h >= 3:
        absent.append(Absence(f"factor:C[{'F' * h}]", (cycle_from_word("F" * h),)))
    return ExtremalInstance(
        G, "two_cliques", {"n": n, "h": h},
        [DegreeClaim("delta_total", "==", 2 * (a - 1)), DegreeClaim("delta_total", ">=", n - 4)],
        absent, Certificate("components", h=h), (a, b),
    )


def tripartite_odd(n: int, k: int) -> ExtremalInstance:
    """Complete tripartite digraph with no factor by any orientation of a (2k+1)-cycle."""
    ell = 2 * k + 1
    if k < 1 or n % ell or n < ell:
        raise ValueError(f"need k >= 1 and {ell} | n, got n={n}, k={k}")
    q = n // ell
    sizes = (q - 1, k * q + 1, k * q)
    if sizes[0] == 0:
        raise ValueError(f"n={n} too small: first class would be empty")
    G = complete_multipartite(sizes)
    big = class_masks(sizes)[1]
    absent = [Absence(f"factor:C[{w}]", (cycle_from_word(w),)) for w in word_classes(ell)]
    return ExtremalInstance(
        G, "tripartite_odd", {"n": n, "k": k},
        [DegreeClaim("delta0", "==", (k + 1) * q - 1)],
        absent, Certificate("independent", mask=big, capacity=q * k), sizes,
    )


def _odd_partitions(n: int, t: int, smallest: int = 3) -> list[tuple[int, ...]]:
    if t == 0:
        return [()] if n == 0 else []
    out = []
    for first in range(smallest, n + 1, 2):
        for rest in _odd_partitions(n - first, t - 1, first):
            out.append((first, *rest))
    return out


_CLASS_ENUM_LIMIT = 11  # word classes are enumerated over all 2^l words


def _cycle_lists(n: int, t: int, cap: int) -> list[tuple[str, ...]]:
    """Multisets of t orientation classes with odd lengths summing to n (directed only past ``cap``)."""
    lists = []
    for part in _odd_partitions(n, t):
        directed = [tuple("F" * l for l in part)]
        if len(lists) >= cap or max(part) > _CLASS_ENUM_LIMIT:
            lists.extend(directed)
            continue
        choices = []
        for ell, cnt in sorted({l: part.count(l) for l in part}.items()):
            choices.append(list(itertools.combinations_with_replacement(word_classes(ell), cnt)))
        if len(lists) + math.prod(map(len, choices)) > cap:
            lists.extend(directed)
        else:
            lists.extend(sum(c, ()) for c in itertools.product(*choices))
    return lists


def elzahar_tripartite(n: int, t: int, max_lists: int = 64) -> ExtremalInstance:
    """Complete tripartite digraph (double edges) with no spanning tiling by t odd cycles."""
    if t < 2 or (n - t) % 2:
        raise ValueError(f"need t >= 2 and n = t mod 2, got n={n}, t={t}")
    sizes = (t - 1, (n - t + 2) // 2, (n - t) // 2)
    if sizes[2] < 1:
        raise ValueError(f"n={n} too small for t={t}")
    G = complete_multipartite(sizes)
    big = class_masks(sizes)[1]
    absent = [Absence("cycles:" + ",".join(ws), words=ws) for ws in _cycle_lists(n, t, max_lists)]
    # an odd cycle of length l meets an independent set in at most (l-1)/2 vertices
    return ExtremalInstance(
        G, "elzahar_tripartite", {"n": n, "t": t},
        [DegreeClaim("delta0", "==", (n + t) // 2 - 1)],
        absent, Certificate("independent", mask=big, capacity=(n - t) // 2), sizes,
    )


def ore_t3(n: int) -> ExtremalInstance:
    """V1 (2n/3-1 vertices), V2 (n/3) and w: double edges inside V1, across V1-V2 and w-V2."""
    if n % 3 or n < 6:
        raise ValueError(f"need 3 | n and n >= 6, got {n}")
    a, b = 2 * n // 3 - 1, n // 3
    V1, V2, w = range(a), range(a, a + b), n - 1
    edges = [(x, y) for x in V1 for y in V1 if x != y]
    edges += [p for x in V1 for y in V2 for p in ((x, y), (y, x))]
    edges += [p for y in V2 for p in ((w, y), (y, w))]
    G = build(n, edges)
    return ExtremalInstance(
        G, "ore_t3", {"n": n},
        [DegreeClaim("ore+-", "==", 4 * n // 3 - 2)],
        [Absence("factor:T3", (transitive_tournament(3),))],
        Certificate("isolated", vertex=w), (a, b, 1),
    )


def r_partite_tr(n: int, r: int) -> ExtremalInstance:
    """Complete r-partite digraph with one class short by one and one long by one."""
    if r < 2 or n % r or n < r * r:
        raise ValueError(f"need r >= 2, r | n and n >= r^2, got n={n}, r={r}")
    q = n // r
    sizes = (q,) * (r - 2) + (q - 1, q + 1)
    G = complete_multipartite(sizes)
    big = class_masks(sizes)[-1]
    return ExtremalInstance(
        G, "r_partite_tr", {"n": n, "r": r},
        [DegreeClaim("ore+-", "==", 2 * (r - 1) * q - 2)],
        [Absence(f"factor:T{r}", (transitive_tournament(r),))],
        # a tournament meets an independent set at most once
        Certificate("independent", mask=big, capacity=q), sizes,
    )


FAMILIES = {
    "two_cliques": (two_cliques, ("n", "h")),
    "tripartite_odd": (tripartite_odd, ("n", "k")),
    "elzahar_tripartite": (elzahar_tripartite, ("n", "t")),
    "ore_t3": (ore_t3, ("n",)),
    "r_partite_tr": (r_partite_tr, ("n", "r")),
}

SMALLEST = [
    ("two_cliques", (12, 3)), ("tripartite_odd", (9, 1)), ("tripartite_odd", (15, 2)),
    ("elzahar_tripartite", (9, 3)), ("ore_t3", (6,)), ("ore_t3", (9,)),
    ("r_partite_tr", (9, 3)), ("r_partite_tr", (8, 2)),
]


def make(family: str, *params: int) -> ExtremalInstance:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {sorted(FAMILIES)}")
    return FAMILIES[family][0](*params)


# -- verification --------------------------------------------------------------------

@dataclass
class Check:
    name: str
    status: str  # pass | fail | unverified | unknown
    detail: str = ""


@dataclass
class Report:
    family: str
    params: dict[str, int]
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.checks)

    def lines(self) -> list[str]:
        head = f"{self.family} " + " ".join(f"{k}={v}" for k, v in self.params.items())
        return [head] + [f"  {c.status:10s} {c.name} {c.detail}".rstrip() for c in self.checks]


def _certify(G: Digraph, cert: Certificate, absent: list[Absence]) -> tuple[bool, str]:
    if cert.kind == "components":
        orders = [c.bit_count() for c in weak_components(G)]
        connected = all(_weakly_connected(p.graph) and p.order == cert.h for a in absent for p in a.patterns)
        ok = connected and all(o % cert.h for o in orders)
        return ok, f"component orders {orders} not divisible by {cert.h}"
    if cert.kind == "independent":
        inside = any(G.out_adj[v] & cert.mask for v in bits(cert.mask))
        size = cert.mask.bit_count()
        return (not inside and size > cert.capacity), f"independent set of {size} > capacity {cert.capacity}"
    if cert.kind == "isolated":
        nb = G.out_adj[cert.vertex] | G.in_adj[cert.vertex]
        ok = not any(G.out_adj[v] & nb for v in bits(nb))
        return ok, f"neighbourhood of {cert.vertex} is independent"
    raise ValueError(f"unknown certificate kind {cert.kind!r}")


def _weakly_connected(P: Digraph) -> bool:
    return len(weak_components(P)) <= 1


def verify(inst: ExtremalInstance, budget: int | None = 10**7, solver_limit: int = 16,
           structural: bool = True) -> Report:
    """Check every degree claim exactly, then absence: structurally, and by exact search up to ``solver_limit``."""
    G = inst.graph
    rep = Report(inst.family, dict(inst.params))
    for c in inst.claims:
        actual = _stat(G, c.stat)
        ok = isinstance(actual, int) and c.holds(actual)
        rep.checks.append(Check(f"degree {c}", "pass" if ok else "fail", f"actual={actual}"))
    cert_ok = False
    if structural and inst.certificate is not None:
        cert_ok, why = _certify(G, inst.certificate, inst.absent)
        rep.checks.append(Check(f"structure {inst.certificate.kind}", "pass" if cert_ok else "fail", why))
    for a in inst.absent:
        if G.n > solver_limit:
            status = "pass" if cert_ok else "unverified"
            rep.checks.append(Check(f"absent {a.label}", status,
                                    "structural proof" if cert_ok else "unverified at this size"))
            continue
        try:
            if a.words:
                found = find_cycle_list_tiling(G, list(a.words), spanning=True, budget=Budget(budget))
            else:
                found = find_factor(G, list(a.patterns), budget=Budget(budget))
        except BudgetExhausted as exc:
            rep.checks.append(Check(f"absent {a.label}", "unknown", f"budget exhausted after {exc.nodes} nodes"))
            continue
        rep.checks.append(Check(f"absent {a.label}", "pass" if found is None else "fail",
                                "exact search" if found is None else f"found {found.embeddings[0].map}..."))
    return rep
