"""Prescribed collections of oriented cycles.

* :func:`random_split` samples a bisection whose two halves keep their share of
  the minimum semi-degree up to a |U|^(2/3) loss.
* :func:`round_cycle_tiling` builds R disjoint copies of a per-round cycle list:
  each round packs oriented paths on l-1 vertices into a random piece of the
  current reservoir and closes every path through one fresh vertex of the next
  part of a random partition.
* :func:`recursive_cycle_partition` splits the cycle list and the vertex set in
  balanced halves until a single cycle remains, which is embedded as an
  oriented Hamilton cycle.

Where the underlying argument invokes an asymptotic existence theorem, these
procedures call the exact solvers under a node budget instead.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from ..digraph import Digraph, bits, mask_of
from ..patterns import cycle_from_word, parse_word
from ..solvers import (Budget, BudgetExhausted, Embedding, Tiling, find_embedding,
                       find_oriented_hamilton, find_path_packing)


class SplitFailure(RuntimeError):
    pass


class PackingFailure(RuntimeError):
    def __init__(self, stage: str, detail: str = ""):
        super().__init__(f"{stage} failed{': ' + detail if detail else ''}")
        self.stage = stage


class RecursionFailure(RuntimeError):
    def __init__(self, words, size: int, reason: str):
        super().__init__(f"subproblem {list(words)} on {size} vertices failed: {reason}")
        self.words = list(words)
        self.size = size


def semidegree_in(G: Digraph, U: int) -> int:
    """delta^0 of G[U] without building the induced digraph."""
    if not U:
        return 0
    return min(min((G.out_adj[v] & U).bit_count(), (G.in_adj[v] & U).bit_count()) for v in bits(U))


def _two_thirds_power(u: int) -> float:
    c = round(u ** (1 / 3))
    if c ** 3 == u:
        return float(c * c)
    return u ** (2 / 3)


def split_bound_ok(G: Digraph, U: int, d0: int, n: int) -> bool:
    """delta^0(G[U]) >= (d0/n)|U| - |U|^(2/3)."""
    u = U.bit_count()
    return semidegree_in(G, U) - float(Fraction(d0 * u, n)) >= -_two_thirds_power(u)


@dataclass
class Split:
    U1: int
    U2: int
    attempts: int


def random_split(G: Digraph, m: int, retries: int = 100, seed=None,
                 domain: int | None = None, rng: random.Random | None = None) -> Split:
    """Uniform random partition of G[domain] with |U1| = m satisfying the semi-degree bound."""
    dom = G.full if domain is None else domain
    verts = list(bits(dom))
    n = len(verts)
    if not 1 <= m <= n - 1:
        raise ValueError(f"need 1 <= m <= n-1, got m={m}, n={n}")
    rng = rng or random.Random(seed)
    d0 = semidegree_in(G, dom)
    for attempt in range(1, retries + 1):
        U1 = mask_of(rng.sample(verts, m))
        U2 = dom & ~U1
        if split_bound_ok(G, U1, d0, n) and split_bound_ok(G, U2, d0, n):
            return Split(U1, U2, attempt)
    raise SplitFailure(f"no admissible split of {n} vertices (m={m}) in {retries} attempts")


# -- round-based q-cycle tiling ------------------------------------------------------

@dataclass(frozen=True)
class QSpec:
    """Orientation words of the cycles required in every round."""
    words: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(parse_word(w) for w in self.words))

    @property
    def q(self) -> dict[int, int]:
        return dict(sorted(Counter(len(w) for w in self.words).items()))

    @property
    def L(self) -> int:
        return max(len(w) for w in self.words)

    @property
    def order(self) -> int:
        return sum(len(w) for w in self.words)


def _close(G: Digraph, word: str, path: tuple[int, ...], pool: int) -> int | None:
    """Least vertex c in pool closing the path into a copy of the cycle ``word``."""
    last, first = path[-1], path[0]
    cand = pool
    cand &= G.out_adj[last] if word[-2] == "F" else G.in_adj[last]
    cand &= G.in_adj[first] if word[-1] == "F" else G.out_adj[first]
    return (cand & -cand).bit_length() - 1 if cand else None


def _one_round(G: Digraph, spec: QSpec, U: int, W: int, rng: random.Random,
               budget: Budget, split_tries: int) -> tuple[list[Embedding], int]:
    words = list(spec.words)
    path_words = [w[:-2] for w in words]
    need = sum(len(w) - 1 for w in words)
    verts = list(bits(U))
    if len(verts) < spec.order:
        raise PackingFailure("reservoir", f"{len(verts)} vertices < {spec.order}")
    stage = "path-packing"
    for _ in range(split_tries):
        U1 = mask_of(rng.sample(verts, need))
        packing = find_path_packing(G, path_words, domain=U1, budget=budget)
        if packing is None:
            continue
        stage = "closing"
        pool = W
        cycles = []
        for emb in packing.embeddings:
            w = next(x for x in words if x[:-2] == emb.pattern.word)
            words.remove(w)
            c = _close(G, w, emb.map, pool)
            if c is None:
                break
            pool &= ~(1 << c)
            cycles.append(Embedding(cycle_from_word(w), (*emb.map, c)))
        else:
            return cycles, (U & ~U1) | pool
        words = list(spec.words)
    raise PackingFailure(stage, f"after {split_tries} random splits")


def round_cycle_tiling(G: Digraph, spec: QSpec, R: int, seed=None, gamma: float = 0.2,
                       retries: int = 100, split_tries: int = 10, budget: Budget | int | None = None,
                       domain: int | None = None) -> Tiling:
    """R vertex-disjoint copies of the per-round cycle list, built round by round."""
    dom = G.full if domain is None else domain
    n = dom.bit_count()
    if R < 1:
        raise ValueError("need at least one round")
    if R * spec.order > (1 - gamma) * n:
        raise ValueError(f"R * sum of lengths = {R * spec.order} exceeds (1 - gamma) n = {(1 - gamma) * n}")
    m = n // (R + 1)
    if m < spec.order:
        raise ValueError(f"parts of size {m} cannot hold one round ({spec.order} vertices)")
    b = budget if isinstance(budget, Budget) else Budget(budget)
    rng = random.Random(seed)
    verts = list(bits(dom))
    last = None
    for _ in range(retries):
        perm = verts[:]
        rng.shuffle(perm)
        parts = [mask_of(perm[i * m:(i + 1) * m]) for i in range(R)] + [mask_of(perm[R * m:])]
        U = parts[0]
        found: list[Embedding] = []
        try:
            for r in range(1, R + 1):
                cycles, U = _one_round(G, spec, U, parts[r], rng, b, split_tries)
                found.extend(cycles)
        except PackingFailure as exc:
            last = exc
            continue
        return Tiling(tuple(found))
    raise PackingFailure(last.stage if last else "partition", f"no success in {retries} attempts")


def greedy_cycles(G: Digraph, words, domain: int, budget: Budget | int | None = None) -> list[Embedding]:
    """Copies of the given cycles, one after another, each inside what is left."""
    found = []
    left = domain
    for w in words:
        emb = find_embedding(G, cycle_from_word(w), domain=left, budget=budget)
        if emb is None:
            raise PackingFailure("greedy", f"no copy of {w} in the residual digraph")
        found.append(emb)
        left &= ~emb.image
    return found


def cycle_tiling_in_rounds(G: Digraph, words, R: int, seed=None, gamma: float = 0.2,
                           retries: int = 100, budget: Budget | int | None = None) -> Tiling:
    """Copies of all ``words``: the remainders mod R are found greedily first,
    the rest is split evenly over R rounds of :func:`round_cycle_tiling`.
    """
    words = [parse_word(w) for w in words]
    counts = Counter(words)
    extra = [w for w, c in sorted(counts.items()) for _ in range(c % R)]
    per_round = [w for w, c in sorted(counts.items()) for _ in range(c // R)]
    b = budget if isinstance(budget, Budget) else Budget(budget)
    pre = greedy_cycles(G, extra, G.full, b)
    used = 0
    for e in pre:
        used |= e.image
    if not per_round:
        return Tiling(tuple(pre))
    rest = round_cycle_tiling(G, QSpec(tuple(per_round)), R, seed, gamma, retries, budget=b,
                              domain=G.full & ~used)
    return Tiling(tuple(pre) + rest.embeddings)


# -- recursive bisection -------------------------------------------------------------

def _balanced_partition(lengths: list[int], lo: float, hi: float) -> tuple[list[int], list[int]] | None:
    """Index sets I1, I2 with lo <= sum(I_j) <= hi, closest to an even split."""
    total = sum(lengths)
    reach = {0: ()}
    for i, l in enumerate(lengths):
        for s, idx in list(reach.items()):
            if s + l not in reach:
                reach[s + l] = idx + (i,)
    ok = [s for s in reach if lo <= s <= hi and lo <= total - s <= hi and 0 < len(reach[s]) < len(lengths)]
    if not ok:
        return None
    s = min(ok, key=lambda x: (abs(2 * x - total), x))
    I1 = list(reach[s])
    I2 = [i for i in range(len(lengths)) if i not in I1]
    return I1, I2


@dataclass
class PartitionStats:
    splits: int = 0
    split_attempts: int = 0
    hamilton_calls: int = 0
    log: list[str] = field(default_factory=list)


def recursive_cycle_partition(G: Digraph, cycles, eta: float = 0.15, seed=None, retries: int = 100,
                              budget: Budget | int | None = None, stats: PartitionStats | None = None,
                              domain: int | None = None, sigma: float | None = None) -> Tiling:
    """Spanning tiling by the prescribed cycles via recursive balanced bisection.

    Each split keeps both halves between ``sigma`` and ``1 - sigma`` of the
    current part (``sigma`` defaults to ``eta / 3``).
    """
    words = [parse_word(w) for w in cycles]
    dom = G.full if domain is None else domain
    if sum(map(len, words)) != dom.bit_count():
        raise ValueError("cycle lengths must sum to the number of vertices")
    if sigma is None:
        sigma = eta / 3
    if not 0 < sigma <= 1 / 3:
        raise ValueError("sigma must lie in (0, 1/3]")
    rng = random.Random(seed)
    b = budget if isinstance(budget, Budget) else Budget(budget)
    st = stats if stats is not None else PartitionStats()

    def hamilton(w: str, U: int) -> Embedding:
        st.hamilton_calls += 1
        emb = find_oriented_hamilton(G, w, budget=b, domain=U)
        if emb is None:
            raise RecursionFailure([w], U.bit_count(), "no oriented Hamilton cycle")
        return emb

    def solve(U: int, ws: list[str]) -> list[Embedding]:
        ws = sorted(ws, key=len, reverse=True)
        size = U.bit_count()
        if len(ws) == 1:
            return [hamilton(ws[0], U)]
        if len(ws[0]) > (1 - sigma) * size:
            small = greedy_cycles(G, ws[1:], U, b)
            used = 0
            for e in small:
                used |= e.image
            return small + [hamilton(ws[0], U & ~used)]
        part = _balanced_partition([len(w) for w in ws], sigma * size, (1 - sigma) * size)
        if part is None:
            raise RecursionFailure(ws, size, "no balanced partition of the cycle list")
        I1, I2 = part
        w1, w2 = [ws[i] for i in I1], [ws[i] for i in I2]
        m = sum(len(w) for w in w1)
        last = "split"
        for _ in range(retries):
            sp = random_split(G, m, retries, domain=U, rng=rng)
            st.splits += 1
            st.split_attempts += sp.attempts
            try:
                return solve(sp.U1, w1) + solve(sp.U2, w2)
            except (RecursionFailure, PackingFailure) as exc:
                last = str(exc)
                st.log.append(last)
        raise RecursionFailure(ws, size, f"all {retries} splits failed; last: {last}")

    try:
        return Tiling(tuple(solve(dom, words)))
    except SplitFailure as exc:
        raise RecursionFailure(words, dom.bit_count(), str(exc)) from exc


__all__ = [
    "SplitFailure", "PackingFailure", "RecursionFailure", "semidegree_in", "split_bound_ok", "Split",
    "random_split", "QSpec", "round_cycle_tiling", "greedy_cycles", "cycle_tiling_in_rounds",
    "recursive_cycle_partition", "PartitionStats", "BudgetExhausted",
]
