"""Target digraphs H: oriented cycles and paths, transitive tournaments,
directed-path blow-ups and random oriented trees.

Orientation words are strings over ``{F, B}``.  Position ``i`` of a cycle word
is ``F`` when ``v_i -> v_{i+1}`` and ``B`` when ``v_{i+1} -> v_i`` (indices mod
the length).
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field

from .digraph import Digraph, build, weak_components, bits


@dataclass(frozen=True)
class Pattern:
    graph: Digraph
    kind: str = "generic"
    name: str = ""
    word: str | None = None

    @property
    def order(self) -> int:
        return self.graph.n

    def __str__(self) -> str:
        return self.name or f"{self.kind}[{self.order}]"


@dataclass(frozen=True)
class LevelMap:
    level: tuple[int, ...]
    k: int
    fibers: tuple[int, ...] = field(default=())

    def sizes(self) -> tuple[int, ...]:
        """Fiber sizes (t_1, ..., t_k) with H inside P(t_1, ..., t_k)."""
        return self.fibers


def parse_word(text: str) -> str:
    w = text.strip().upper()
    if len(w) < 3:
        raise ValueError(f"orientation word {text!r} is shorter than 3")
    if set(w) - {"F", "B"}:
        raise ValueError(f"orientation word {text!r} may only contain F and B")
    return w


def cycle_from_word(word: str) -> Pattern:
    w = parse_word(word)
    ell = len(w)
    edges = []
    for i, c in enumerate(w):
        a, b = i, (i + 1) % ell
        edges.append((a, b) if c == "F" else (b, a))
    return Pattern(build(ell, edges), "cycle", f"C[{w}]", w)


def path_from_word(word: str) -> Pattern:
    """Oriented path on ``len(word) + 1`` vertices; an empty word is a single vertex."""
    w = word.strip().upper()
    if set(w) - {"F", "B"}:
        raise ValueError(f"path word {word!r} may only contain F and B")
    edges = [(i, i + 1) if c == "F" else (i + 1, i) for i, c in enumerate(w)]
    return Pattern(build(len(w) + 1, edges), "path", f"P[{w}]", w)


def is_balanced(word: str) -> bool:
    w = parse_word(word)
    return w.count("F") == w.count("B")


def reflect_word(word: str) -> str:
    """The same cycle traversed the other way round."""
    return "".join("B" if c == "F" else "F" for c in reversed(word))


def canonical_word(word: str) -> str:
    """Least rotation of the word or its reflection; equal iff the cycles are isomorphic."""
    w = parse_word(word)
    cands = []
    for x in (w, reflect_word(w)):
        cands.extend(x[i:] + x[:i] for i in range(len(x)))
    return min(cands)


def word_classes(ell: int) -> list[str]:
    """One representative per isomorphism class of orientations of an ell-cycle."""
    return sorted({canonical_word("".join(p)) for p in itertools.product("BF", repeat=ell)})


def hom_into_directed_path(H: Pattern | Digraph) -> LevelMap | None:
    """Level assignment with level(y) = level(x) + 1 on every edge xy, or None."""
    G = H.graph if isinstance(H, Pattern) else H
    if G.loops:
        return None
    level = [0] * G.n
    for comp in weak_components(G):
        s = (comp & -comp).bit_length() - 1
        lv = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in bits(G.out_adj[x]):
                if y not in lv:
                    lv[y] = lv[x] + 1
                    queue.append(y)
                elif lv[y] != lv[x] + 1:
                    return None
            for y in bits(G.in_adj[x]):
                if y not in lv:
                    lv[y] = lv[x] - 1
                    queue.append(y)
                elif lv[y] != lv[x] - 1:
                    return None
        low = min(lv.values())
        for v, l in lv.items():
            level[v] = l - low + 1
    k = max(level, default=0)
    fibers = tuple(level.count(i) for i in range(1, k + 1))
    return LevelMap(tuple(level), k, fibers)


def check_level_map(G: Digraph, lm: LevelMap) -> bool:
    return (not G.n or min(lm.level) == 1) and all(lm.level[y] == lm.level[x] + 1 for x, y in G.edges())


def transitive_tournament(r: int) -> Pattern:
    if r < 1:
        raise ValueError("transitive tournament needs r >= 1")
    return Pattern(build(r, itertools.combinations(range(r), 2)), "transitive_tournament", f"T{r}")


def path_blowup(t: list[int] | tuple[int, ...]) -> Pattern:
    """P(t_1, ..., t_k): groups of sizes t_i, all edges from group i to group i+1."""
    if not t or any(x < 1 for x in t):
        raise ValueError("path blow-up needs a non-empty list of positive sizes")
    starts = list(itertools.accumulate([0, *t]))
    edges = []
    for i in range(len(t) - 1):
        for a in range(starts[i], starts[i + 1]):
            for b in range(starts[i + 1], starts[i + 2]):
                edges.append((a, b))
    return Pattern(build(starts[-1], edges), "path_blowup", "P(" + ",".join(map(str, t)) + ")")


def random_tree(h: int, seed: int | str | None = None) -> Pattern:
    """Uniform labelled tree via a Pruefer sequence, each edge oriented by a fair coin."""
    if h < 1:
        raise ValueError("tree order must be at least 1")
    rng = random.Random(seed)
    if h == 1:
        return Pattern(build(1), "tree", "tree[1]")
    if h == 2:
        pairs = [(0, 1)]
    else:
        seq = [rng.randrange(h) for _ in range(h - 2)]
        degree = [1] * h
        for x in seq:
            degree[x] += 1
        pairs = []
        for x in seq:
            leaf = min(v for v in range(h) if degree[v] == 1)
            pairs.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = (w for w in range(h) if degree[w] == 1)
        pairs.append((u, v))
    edges = [(a, b) if rng.random() < 0.5 else (b, a) for a, b in pairs]
    return Pattern(build(h, edges), "tree", f"tree[{h}]")


def directed_cycle_pattern(ell: int) -> Pattern:
    return cycle_from_word("F" * ell)


T3 = transitive_tournament(3)
C3 = cycle_from_word("FFF")
