"""Turning a {T3, C3}-factor into a T3-factor under the Ore-type condition.

While some tile is a directed triangle C on x -> y -> z -> x:

* if G has one of the reverse edges yx, zy, xz, the vertex set of C already
  spans a T3 and the tile is relabelled (a "local-swap");
* otherwise some other tile T receives at least 7 edges from V(C) (or sends
  at least 7 edges to it).  A vertex c of C is then joined to all of T in
  that direction and the other two vertices of C share a neighbour w in T, so
  {c} + T - w and C - c + w are two transitive triangles ("seven-edge-swap").

Either step raises the number of T3 tiles, so at most n/3 steps occur.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..digraph import Digraph, bits
from ..patterns import C3, T3, Pattern
from ..solvers import Budget, Embedding, Tiling, find_factor
from ..validate import tiling_ok


class HypothesisViolation(RuntimeError):
    """No augmenting step applies: the Ore-type condition must fail on this host."""


@dataclass
class AugmentTrace:
    steps: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)
    states: list[Tiling] = field(default_factory=list)
    final: Tiling | None = None

    def to_log(self) -> str:
        return "".join(
            f"step {i} {kind} tiles={','.join(map(str, ids))}\n" for i, (kind, ids) in enumerate(self.steps)
        )


def _t3_map(G: Digraph, S) -> tuple[int, int, int] | None:
    for a, b, c in itertools.permutations(sorted(S)):
        if G.has_edge(a, b) and G.has_edge(a, c) and G.has_edge(b, c):
            return a, b, c
    return None


def seed_factor(G: Digraph, prefer_cycles: bool = True, budget: Budget | int | None = None) -> Tiling | None:
    """A {T3, C3}-factor from the exact solver; by default directed triangles are preferred."""
    return find_factor(G, [C3, T3] if prefer_cycles else [T3, C3], budget=budget)


def _is_c3(emb: Embedding) -> bool:
    return emb.pattern.name == C3.name


def _seven_edge_swap(G: Digraph, tiles: list[Embedding], i: int, direction: str):
    cyc = tiles[i].map
    C = set(cyc)
    adj = G.out_adj if direction == "out" else G.in_adj
    for j, T in enumerate(tiles):
        if j == i:
            continue
        tmask = T.image
        if sum((adj[c] & tmask).bit_count() for c in cyc) < 7:
            continue
        for c in sorted(C):
            if adj[c] & tmask != tmask:
                continue
            c1, c2 = sorted(C - {c})
            for w in bits(adj[c1] & adj[c2] & tmask):
                first = _t3_map(G, {c1, c2, w})
                second = _t3_map(G, {c} | (set(T.map) - {w}))
                if first and second:
                    return j, first, second
    return None


def t3_augment(G: Digraph, start: Tiling, check: bool = True) -> AugmentTrace:
    if G.n % 3:
        raise ValueError("vertex count must be divisible by 3")
    if not tiling_ok(G, start, spanning=True) or any(e.pattern.name not in (T3.name, C3.name) for e in start.embeddings):
        raise ValueError("start must be a spanning {T3, C3}-factor")
    tiles = list(start.embeddings)
    trace = AugmentTrace(states=[start])
    while True:
        i = next((k for k, e in enumerate(tiles) if _is_c3(e)), None)
        if i is None:
            break
        x, y, z = tiles[i].map
        if G.has_edge(y, x) or G.has_edge(z, y) or G.has_edge(x, z):
            tiles[i] = Embedding(T3, _t3_map(G, {x, y, z}))
            trace.steps.append(("local-swap", (i,)))
        else:
            found = _seven_edge_swap(G, tiles, i, "out") or _seven_edge_swap(G, tiles, i, "in")
            if found is None:
                out_sum = sum(G.out_degree(v) for v in (x, y, z))
                in_sum = sum(G.in_degree(v) for v in (x, y, z))
                raise HypothesisViolation(
                    f"no augmenting step for directed triangle {(x, y, z)} (tile {i}); "
                    f"out-degree sum {out_sum}, in-degree sum {in_sum}, 2n-1 = {2 * G.n - 1}; "
                    f"tiles={[e.map for e in tiles]}"
                )
            j, first, second = found
            tiles[i] = Embedding(T3, first)
            tiles[j] = Embedding(T3, second)
            trace.steps.append(("seven-edge-swap", (i, j)))
        state = Tiling(tuple(tiles))
        if check:
            assert tiling_ok(G, state, spanning=True)
        trace.states.append(state)
    trace.final = Tiling(tuple(tiles))
    return trace


def t3_count(t: Tiling) -> int:
    return sum(1 for e in t.embeddings if e.pattern.name == T3.name)


def is_t3_factor(G: Digraph, t: Tiling, pattern: Pattern = T3) -> bool:
    return tiling_ok(G, t, spanning=True) and all(e.pattern.name == pattern.name for e in t.embeddings)
