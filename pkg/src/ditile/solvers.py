"""Exact backtracking search for copies, tilings and factors.

Every search branches on the least-index uncovered host vertex and tries the
pattern copies that contain it.  Copies are non-induced.  Failed residual
states are memoised by their vertex bitset, so tilings are effectively
deduplicated by covered-set signature.

A :class:`Budget` bounds the number of search nodes; running out raises
:class:`BudgetExhausted`, which callers must keep distinct from "no solution".
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence

from .digraph import Digraph, bits, mask_of
from .patterns import Pattern, cycle_from_word, parse_word

# above this many candidate sets per vertex, enumerate anchored embeddings instead
COMBINATION_LIMIT = 40_000


class BudgetExhausted(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search budget of {nodes} nodes exhausted")
        self.nodes = nodes


class Budget:
    """Node counter shared by one search (or a family of related searches)."""

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise BudgetExhausted(self.limit)


def _as_budget(budget: Budget | int | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)


@dataclass(frozen=True)
class Embedding:
    pattern: Pattern
    map: tuple[int, ...]

    @property
    def image(self) -> int:
        return mask_of(self.map)

    def vertices(self) -> list[int]:
        return sorted(self.map)


@dataclass(frozen=True)
class Tiling:
    embeddings: tuple[Embedding, ...] = ()

    @property
    def covered(self) -> int:
        m = 0
        for e in self.embeddings:
            m |= e.image
        return m

    @property
    def size(self) -> int:
        return len(self.embeddings)

    def coverage(self) -> int:
        return self.covered.bit_count()

    def count(self, name: str) -> int:
        return sum(1 for e in self.embeddings if e.pattern.name == name)

    def __len__(self) -> int:
        return len(self.embeddings)


# -- embedding kernel ------------------------------------------------------------

def _plan(P: Digraph, first: int | None = None) -> list[tuple[int, list[tuple[int, bool]]]]:
    """Order pattern vertices so each one has as many already-placed neighbours as possible.

    Each entry is ``(u, [(w, forward), ...])`` where ``forward`` means the
    pattern edge is ``w -> u``.
    """
    h = P.n
    placed: list[int] = []
    done = 0
    plan = []
    for step in range(h):
        if step == 0 and first is not None:
            u = first
        else:
            best, best_key = -1, None
            for c in range(h):
                if done >> c & 1:
                    continue
                key = ((P.in_adj[c] | P.out_adj[c]) & done).bit_count()
                if best_key is None or key > best_key:
                    best, best_key = c, key
            u = best
        cons = [(w, True) for w in bits(P.in_adj[u] & done)]
        cons += [(w, False) for w in bits(P.out_adj[u] & done)]
        plan.append((u, cons))
        placed.append(u)
        done |= 1 << u
    return plan


def _embed(G: Digraph, P: Digraph, domain: int, budget: Budget,
           plan=None, first_mask: int | None = None) -> Iterator[list[int]]:
    """Yield injective maps P -> G[domain] preserving edges (shared mutable list)."""
    plan = plan or _plan(P)
    h = P.n
    mapping = [-1] * h
    out_adj, in_adj = G.out_adj, G.in_adj

    def rec(i: int, used: int) -> Iterator[list[int]]:
        if i == h:
            yield mapping
            return
        u, cons = plan[i]
        cand = domain & ~used
        if i == 0 and first_mask is not None:
            cand &= first_mask
        for w, forward in cons:
            cand &= out_adj[mapping[w]] if forward else in_adj[mapping[w]]
            if not cand:
                return
        while cand:
            low = cand & -cand
            cand ^= low
            budget.tick()
            mapping[u] = low.bit_length() - 1
            yield from rec(i + 1, used | low)
        mapping[u] = -1

    yield from rec(0, 0)


def find_embedding(G: Digraph, H: Pattern, domain: int | None = None,
                   budget: Budget | int | None = None) -> Embedding | None:
    b = _as_budget(budget)
    dom = G.full if domain is None else domain
    if H.order > dom.bit_count():
        return None
    for mp in _embed(G, H.graph, dom, b):
        return Embedding(H, tuple(mp))
    return None


def enumerate_copies(G: Digraph, H: Pattern, anchor: tuple[int, int] | None = None,
                     limit: int | None = None, budget: Budget | int | None = None) -> list[Embedding]:
    """Raw (not automorphism-reduced) embeddings of H into G."""
    if H.order > G.n:
        return []
    b = _as_budget(budget)
    if anchor is not None:
        p, v = anchor
        gen = _embed(G, H.graph, G.full, b, _plan(H.graph, p), 1 << v)
    else:
        gen = _embed(G, H.graph, G.full, b)
    found = []
    for mp in gen:
        found.append(Embedding(H, tuple(mp)))
        if limit is not None and len(found) >= limit:
            break
    return found


# -- tile index and packing --------------------------------------------------------

class Packer:
    """Exact tiling search of a fixed host by a fixed list of patterns.

    Tile sets (vertex sets spanning a copy of some pattern) are computed lazily
    per anchor vertex on the whole host and filtered against the residual set,
    so one packer can answer many questions about induced subdigraphs.
    """

    def __init__(self, G: Digraph, patterns: Sequence[Pattern], budget: Budget | int | None = None):
        self.G = G
        self.patterns = list(patterns)
        self.budget = _as_budget(budget)
        self._plans = [_plan(p.graph) for p in self.patterns]
        self._tiles: dict[tuple[int, int], list[tuple[int, tuple[int, ...]]]] = {}
        self._contains: dict[tuple[int, int], tuple[int, ...] | None] = {}
        self._fail_cover: set[int] = set()
        self._fail_pack: set[tuple[int, tuple[int, ...]]] = set()
        self._fail_max: dict[int, int] = {}
        self._all_connected = all(_connected(p.graph) for p in self.patterns)

    # set-level tests
    def contains(self, S: int, pidx: int) -> tuple[int, ...] | None:
        """An embedding of pattern ``pidx`` onto exactly the vertex set S, if any."""
        key = (S, pidx)
        if key in self._contains:
            return self._contains[key]
        P = self.patterns[pidx]
        res = None
        if S.bit_count() == P.order:
            for mp in _embed(self.G, P.graph, S, self.budget, self._plans[pidx]):
                res = tuple(mp)
                break
        self._contains[key] = res
        return res

    def tiles(self, v: int, pidx: int) -> list[tuple[int, tuple[int, ...]]]:
        """All vertex sets containing v that span a copy of pattern ``pidx``."""
        key = (v, pidx)
        if key in self._tiles:
            return self._tiles[key]
        G, P = self.G, self.patterns[pidx]
        h = P.order
        out: list[tuple[int, tuple[int, ...]]] = []
        if h <= G.n:
            reach = self._reach(v, h)
            others = [u for u in bits(reach) if u != v]
            if comb(len(others), h - 1) <= COMBINATION_LIMIT:
                for rest in itertools.combinations(others, h - 1):
                    S = mask_of(rest) | 1 << v
                    mp = self.contains(S, pidx)
                    if mp is not None:
                        out.append((S, mp))
            else:
                seen = set()
                for p in range(h):
                    plan = _plan(P.graph, p)
                    for mp in _embed(G, P.graph, reach, self.budget, plan, 1 << v):
                        S = mask_of(mp)
                        if S not in seen:
                            seen.add(S)
                            out.append((S, tuple(mp)))
        self._tiles[key] = out
        return out

    def _reach(self, v: int, h: int) -> int:
        """Vertices within underlying distance h-1 of v (all of them if the pattern is disconnected)."""
        if not self._all_connected:
            return self.G.full
        seen = frontier = 1 << v
        for _ in range(h - 1):
            nxt = 0
            for u in bits(frontier):
                nxt |= self.G.out_adj[u] | self.G.in_adj[u]
            frontier = nxt & ~seen
            if not frontier:
                break
            seen |= frontier
        return seen

    # spanning cover by any of the patterns, unlimited multiplicities
    def cover(self, mask: int) -> list[tuple[int, int, tuple[int, ...]]] | None:
        if mask == 0:
            return []
        if mask in self._fail_cover:
            return None
        v = (mask & -mask).bit_length() - 1
        tried = set()
        for pidx in range(len(self.patterns)):
            for S, mp in self.tiles(v, pidx):
                if S & ~mask or S in tried:
                    continue
                tried.add(S)
                self.budget.tick()
                rest = self.cover(mask & ~S)
                if rest is not None:
                    return [(S, pidx, mp), *rest]
        self._fail_cover.add(mask)
        return None

    # prescribed multiset: counts[i] copies of pattern i, leaving slack uncovered
    def pack(self, mask: int, counts: tuple[int, ...]) -> list[tuple[int, int, tuple[int, ...]]] | None:
        if not any(counts):
            return []
        key = (mask, counts)
        if key in self._fail_pack:
            return None
        need = sum(c * p.order for c, p in zip(counts, self.patterns))
        pc = mask.bit_count()
        if pc < need:
            return None
        v = (mask & -mask).bit_length() - 1
        for pidx, c in enumerate(counts):
            if not c:
                continue
            nxt = counts[:pidx] + (c - 1,) + counts[pidx + 1:]
            for S, mp in self.tiles(v, pidx):
                if S & ~mask:
                    continue
                self.budget.tick()
                rest = self.pack(mask & ~S, nxt)
                if rest is not None:
                    return [(S, pidx, mp), *rest]
        if pc > need:
            self.budget.tick()
            rest = self.pack(mask & ~(1 << v), counts)
            if rest is not None:
                return rest
        self._fail_pack.add(key)
        return None

    # at least k vertex-disjoint copies of any pattern inside mask
    def place(self, mask: int, k: int) -> list[tuple[int, int, tuple[int, ...]]] | None:
        if k <= 0:
            return []
        if self._fail_max.get(mask, k + 1) <= k:
            return None
        hmin = min(p.order for p in self.patterns)
        pc = mask.bit_count()
        if pc < k * hmin:
            return None
        v = (mask & -mask).bit_length() - 1
        tried = set()
        for pidx in range(len(self.patterns)):
            for S, mp in self.tiles(v, pidx):
                if S & ~mask or S in tried:
                    continue
                tried.add(S)
                self.budget.tick()
                rest = self.place(mask & ~S, k - 1)
                if rest is not None:
                    return [(S, pidx, mp), *rest]
        self.budget.tick()
        rest = self.place(mask & ~(1 << v), k)
        if rest is not None:
            return rest
        self._fail_max[mask] = min(self._fail_max.get(mask, k), k)
        return None

    def to_tiling(self, parts: Iterable[tuple[int, int, tuple[int, ...]]]) -> Tiling:
        return Tiling(tuple(Embedding(self.patterns[p], mp) for _, p, mp in parts))


def _connected(P: Digraph) -> bool:
    if P.n <= 1:
        return True
    seen = frontier = 1
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= P.out_adj[u] | P.in_adj[u]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == P.full


# -- public solvers -----------------------------------------------------------------

def find_factor(G: Digraph, patterns: Pattern | Sequence[Pattern],
                budget: Budget | int | None = None, domain: int | None = None) -> Tiling | None:
    """Spanning tiling of G (or of G[domain]) by copies of the given patterns, or None.

    Patterns earlier in the list are preferred when a vertex set spans several.
    """
    pats = [patterns] if isinstance(patterns, Pattern) else list(patterns)
    mask = G.full if domain is None else domain
    n = mask.bit_count()
    if n == 0:
        return Tiling()
    orders = {p.order for p in pats}
    if len(pats) == 1 or len(orders) == 1:
        h = next(iter(orders))
        if n % h:
            return None
    packer = Packer(G, pats, budget)
    if len(pats) == 1:
        parts = packer.pack(mask, (n // pats[0].order,))
    else:
        parts = packer.cover(mask)
    return None if parts is None else packer.to_tiling(parts)


def _word_counts(cycles: Sequence[str]) -> tuple[list[Pattern], tuple[int, ...]]:
    words = [parse_word(w) for w in cycles]
    distinct = sorted(set(words), key=lambda w: (-len(w), w))
    return [cycle_from_word(w) for w in distinct], tuple(words.count(w) for w in distinct)


def find_cycle_list_tiling(G: Digraph, cycles: Sequence[str], spanning: bool = True,
                           budget: Budget | int | None = None, domain: int | None = None) -> Tiling | None:
    """Vertex-disjoint copies of the prescribed oriented cycles (exact)."""
    mask = G.full if domain is None else domain
    n = mask.bit_count()
    total = sum(len(parse_word(w)) for w in cycles)
    if total > n:
        raise ValueError(f"cycle lengths sum to {total} > {n} vertices")
    if spanning and total != n:
        raise ValueError(f"spanning tiling needs lengths summing to {n}, got {total}")
    if not cycles:
        return Tiling()
    pats, counts = _word_counts(cycles)
    packer = Packer(G, pats, budget)
    parts = packer.pack(mask, counts)
    return None if parts is None else packer.to_tiling(parts)


def find_path_packing(G: Digraph, words: Sequence[str], domain: int | None = None,
                      budget: Budget | int | None = None) -> Tiling | None:
    """Spanning packing of G[domain] by oriented paths given as edge words."""
    from .patterns import path_from_word

    distinct = sorted(set(words), key=lambda w: (-len(w), w))
    pats = [path_from_word(w) for w in distinct]
    counts = tuple(list(words).count(w) for w in distinct)
    mask = G.full if domain is None else domain
    if sum(c * p.order for c, p in zip(counts, pats)) != mask.bit_count():
        raise ValueError("path orders must sum to the size of the domain")
    packer = Packer(G, pats, budget)
    parts = packer.pack(mask, counts)
    return None if parts is None else packer.to_tiling(parts)


def find_oriented_hamilton(G: Digraph, word: str, budget: Budget | int | None = None,
                           domain: int | None = None) -> Embedding | None:
    w = parse_word(word)
    mask = G.full if domain is None else domain
    if len(w) != mask.bit_count():
        raise ValueError(f"word length {len(w)} differs from host order {mask.bit_count()}")
    P = cycle_from_word(w)
    b = _as_budget(budget)
    # any host vertex will do as the image of some cycle position: pin the least one
    v0 = (mask & -mask).bit_length() - 1
    tried = set()
    for p in range(len(w)):
        rot = w[p:] + w[:p]
        if rot in tried:
            continue
        tried.add(rot)
        for mp in _embed(G, P.graph, mask, b, _plan(P.graph, p), 1 << v0):
            return Embedding(P, tuple(mp))
    return None


def max_tiling(G: Digraph, H: Pattern | Sequence[Pattern], budget: Budget | int | None = None,
               start: Tiling | None = None, domain: int | None = None) -> Tiling:
    """A maximum-cardinality tiling (raises BudgetExhausted if the proof runs out of nodes)."""
    return max_tiling_anytime(G, H, budget, start, domain, strict=True)[0]


def max_tiling_anytime(G: Digraph, H: Pattern | Sequence[Pattern], budget: Budget | int | None = None,
                       start: Tiling | None = None, domain: int | None = None,
                       strict: bool = False) -> tuple[Tiling, bool]:
    """Best tiling found and whether it is proven maximum.

    Grows the target count one tile at a time from ``start``; the only
    infeasibility proof needed is for one more tile than the answer.
    """
    pats = [H] if isinstance(H, Pattern) else list(H)
    mask = G.full if domain is None else domain
    packer = Packer(G, pats, budget)
    best = start if start is not None else Tiling()
    hmin = min(p.order for p in pats)
    upper = mask.bit_count() // hmin
    k = best.size + 1
    try:
        while k <= upper:
            parts = packer.place(mask, k)
            if parts is None:
                return best, True
            best = packer.to_tiling(parts)
            k = best.size + 1
    except BudgetExhausted:
        if strict:
            raise
        return best, False
    return best, True


def count_absorbing_sets(G: Digraph, H: Pattern, x: int, y: int, size: int,
                         budget: Budget | int | None = None) -> int:
    """Number of ``size``-sets X avoiding x, y with H-factors in G[X+x] and G[X+y]."""
    h = H.order
    if (size + 1) % h:
        raise ValueError(f"size {size} is not -1 mod {h}")
    if x == y:
        raise ValueError("x and y must differ")
    packer = Packer(G, [H], budget)
    k = (size + 1) // h
    good: dict[int, bool] = {}

    def has_factor(S: int) -> bool:
        if S not in good:
            good[S] = packer.pack(S, (k,)) is not None
        return good[S]

    others = [v for v in range(G.n) if v not in (x, y)]
    total = 0
    for X in itertools.combinations(others, size):
        S = mask_of(X)
        if has_factor(S | 1 << x) and has_factor(S | 1 << y):
            total += 1
    return total
