"""Loop-aware digraphs with bitset adjacency rows.

Vertices are ``0..n-1``.  Vertex sets are plain Python ints used as bitsets
(bit ``v`` set means ``v`` is a member).  Loops are stored out of band and are
invisible to every degree count and to pattern matching; only :func:`blow_up`
looks at them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

COMPLETE = "complete"
ORE_VARIANTS = ("+-", "++", "--", "-+")


def bits(mask: int) -> Iterator[int]:
    """Yield the members of a bitset in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Digraph:
    n: int
    out_adj: tuple[int, ...]
    in_adj: tuple[int, ...]
    loops: int = 0

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.out_adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.out_adj[u] >> v & 1)

    def has_loop(self, v: int) -> bool:
        return bool(self.loops >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in bits(self.out_adj[u]):
                yield u, v

    def loop_list(self) -> list[int]:
        return list(bits(self.loops))

    def out_degree(self, v: int) -> int:
        return self.out_adj[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.in_adj[v].bit_count()

    def dominant_degree(self, v: int) -> int:
        return max(self.out_degree(v), self.in_degree(v))

    def check(self) -> None:
        """Assert the representation invariants (transpose symmetry, no self rows)."""
        for u in range(self.n):
            assert not self.out_adj[u] >> u & 1 and not self.in_adj[u] >> u & 1
            assert self.out_adj[u] >> self.n == 0 and self.in_adj[u] >> self.n == 0
            for v in bits(self.out_adj[u]):
                assert self.in_adj[v] >> u & 1
        assert sum(r.bit_count() for r in self.in_adj) == self.m
        assert self.loops >> self.n == 0

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m}, loops={self.loop_list()})"


def build(n: int, edges: Iterable[tuple[int, int]] = (), loops: Iterable[int] = ()) -> Digraph:
    """Build a digraph; duplicate edges collapse, self-pairs must go in ``loops``."""
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    out = [0] * n
    inn = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise ValueError(f"self-pair ({u}, {u}) in edge list; declare it as a loop")
        out[u] |= 1 << v
        inn[v] |= 1 << u
    lp = 0
    for v in loops:
        if not 0 <= v < n:
            raise ValueError(f"loop at {v} outside [0, {n})")
        lp |= 1 << v
    return Digraph(n, tuple(out), tuple(inn), lp)


def from_rows(out_rows: Sequence[int], loops: int = 0) -> Digraph:
    """Build from out-adjacency bitmask rows (diagonal bits are dropped)."""
    n = len(out_rows)
    out = [row & ~(1 << u) & ((1 << n) - 1) for u, row in enumerate(out_rows)]
    inn = [0] * n
    for u in range(n):
        for v in bits(out[u]):
            inn[v] |= 1 << u
    return Digraph(n, tuple(out), tuple(inn), loops)


def complete_digraph(n: int, loops: bool = False) -> Digraph:
    full = (1 << n) - 1
    return from_rows([full] * n, full if loops else 0)


def edgeless(n: int) -> Digraph:
    return Digraph(n, (0,) * n, (0,) * n, 0)


def directed_cycle(n: int) -> Digraph:
    return build(n, [(i, (i + 1) % n) for i in range(n)])


def directed_path(n: int) -> Digraph:
    return build(n, [(i, i + 1) for i in range(n - 1)])


def complete_multipartite(sizes: Sequence[int]) -> Digraph:
    """Double edges between every pair of vertices in distinct classes."""
    if not sizes:
        raise ValueError("need at least one class")
    if any(s < 1 for s in sizes):
        raise ValueError("class sizes must be positive")
    n = sum(sizes)
    full = (1 << n) - 1
    rows = []
    start = 0
    for s in sizes:
        cls = ((1 << s) - 1) << start
        rows.extend([full & ~cls] * s)
        start += s
    return from_rows(rows)


def class_masks(sizes: Sequence[int]) -> list[int]:
    """Bitmasks of consecutive classes as laid out by :func:`complete_multipartite`."""
    masks, start = [], 0
    for s in sizes:
        masks.append(((1 << s) - 1) << start)
        start += s
    return masks


@dataclass(frozen=True)
class DegreeProfile:
    d_out: tuple[int, ...]
    d_in: tuple[int, ...]
    d_total: tuple[int, ...]
    d_dom: tuple[int, ...]
    delta_total: int
    delta_semi: int
    delta_dom: int


def degrees(G: Digraph) -> DegreeProfile:
    d_out = tuple(r.bit_count() for r in G.out_adj)
    d_in = tuple(r.bit_count() for r in G.in_adj)
    d_total = tuple(a + b for a, b in zip(d_out, d_in))
    d_dom = tuple(max(a, b) for a, b in zip(d_out, d_in))
    if G.n == 0:
        return DegreeProfile((), (), (), (), 0, 0, 0)
    return DegreeProfile(
        d_out, d_in, d_total, d_dom,
        delta_total=min(d_total),
        delta_semi=min(min(d_out), min(d_in)),
        delta_dom=min(d_dom),
    )


def min_semidegree(G: Digraph) -> int:
    if G.n == 0:
        return 0
    return min(min(r.bit_count() for r in G.out_adj), min(r.bit_count() for r in G.in_adj))


def min_total_degree(G: Digraph) -> int:
    if G.n == 0:
        return 0
    return min(a.bit_count() + b.bit_count() for a, b in zip(G.out_adj, G.in_adj))


def _degree_vectors(G: Digraph, variant: str) -> tuple[list[int], list[int]]:
    if variant not in ORE_VARIANTS:
        raise ValueError(f"unknown Ore variant {variant!r}; expected one of {ORE_VARIANTS}")
    out = [r.bit_count() for r in G.out_adj]
    inn = [r.bit_count() for r in G.in_adj]
    first = out if variant[0] == "+" else inn
    second = out if variant[1] == "+" else inn
    return first, second


def ore_minimum(G: Digraph, variant: str = "+-") -> int | str:
    """Minimum of d°(x) + d•(y) over ordered non-edges xy, x != y.

    ``variant`` names the two degree kinds, e.g. ``"+-"`` is d+(x) + d-(y).
    Returns :data:`COMPLETE` when every ordered pair is an edge.
    """
    first, second = _degree_vectors(G, variant)
    best = None
    full = G.full
    for x in range(G.n):
        missing = full & ~G.out_adj[x] & ~(1 << x)
        for y in bits(missing):
            s = first[x] + second[y]
            if best is None or s < best:
                best = s
    return COMPLETE if best is None else best


def ore_violations(G: Digraph, threshold: int, variant: str = "+-") -> list[tuple[int, int]]:
    """Ordered non-edges xy whose degree sum falls below ``threshold``."""
    first, second = _degree_vectors(G, variant)
    bad = []
    full = G.full
    for x in range(G.n):
        for y in bits(full & ~G.out_adj[x] & ~(1 << x)):
            if first[x] + second[y] < threshold:
                bad.append((x, y))
    return bad


def blow_up(G: Digraph, t: int) -> Digraph:
    """The t-blow-up: vertex ``v`` becomes ``v*t + a`` for ``a`` in ``range(t)``.

    Looped vertices expand to complete digraphs carrying a loop at every copy.
    """
    if t < 1:
        raise ValueError("blow-up factor must be at least 1")
    n = G.n * t
    block = (1 << t) - 1
    groups = [block << (v * t) for v in range(G.n)]
    rows = []
    loops = 0
    for v in range(G.n):
        row = 0
        for w in bits(G.out_adj[v]):
            row |= groups[w]
        if G.loops >> v & 1:
            row |= groups[v]
            loops |= groups[v]
        rows.extend([row] * t)
    return from_rows(rows, loops) if n else edgeless(0)


def induced(G: Digraph, S: int) -> tuple[Digraph, list[int]]:
    """Induced subdigraph on bitset ``S`` plus the map new index -> old vertex."""
    if S >> G.n:
        raise ValueError("vertex set is not a subset of the universe")
    keep = list(bits(S))
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    loops = 0
    for i, v in enumerate(keep):
        row = 0
        for w in bits(G.out_adj[v] & S):
            row |= 1 << pos[w]
        rows.append(row)
        if G.loops >> v & 1:
            loops |= 1 << i
    return from_rows(rows, loops), keep


def delete(G: Digraph, S: int) -> tuple[Digraph, list[int]]:
    return induced(G, G.full & ~S)


def relabel(G: Digraph, perm: Sequence[int]) -> Digraph:
    """Digraph with vertex ``v`` renamed ``perm[v]``."""
    return build(G.n, [(perm[u], perm[v]) for u, v in G.edges()], [perm[v] for v in bits(G.loops)])


def disjoint_union(*graphs: Digraph) -> Digraph:
    edges, loops, off = [], [], 0
    for H in graphs:
        edges.extend((u + off, v + off) for u, v in H.edges())
        loops.extend(v + off for v in bits(H.loops))
        off += H.n
    return build(off, edges, loops)


def weak_components(G: Digraph) -> list[int]:
    """Weakly connected components as bitsets, ordered by least vertex."""
    seen = 0
    comps = []
    for s in range(G.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= G.out_adj[v] | G.in_adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def is_isomorphic(G: Digraph, H: Digraph) -> bool:
    """Backtracking isomorphism test (loops respected); fine for n up to about 12."""
    if G.n != H.n or G.m != H.m or G.loops.bit_count() != H.loops.bit_count():
        return False

    def sig(D: Digraph, v: int) -> tuple[int, int, bool]:
        return D.out_degree(v), D.in_degree(v), D.has_loop(v)

    if sorted(sig(G, v) for v in range(G.n)) != sorted(sig(H, v) for v in range(H.n)):
        return False
    order = sorted(range(G.n), key=lambda v: -(G.out_degree(v) + G.in_degree(v)))
    mapping = [-1] * G.n
    used = [False] * H.n

    def extend(i: int) -> bool:
        if i == G.n:
            return True
        v = order[i]
        for w in range(H.n):
            if used[w] or sig(G, v) != sig(H, w):
                continue
            ok = True
            for j in range(i):
                u = order[j]
                x = mapping[u]
                if G.has_edge(u, v) != H.has_edge(x, w) or G.has_edge(v, u) != H.has_edge(w, x):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if extend(i + 1):
                    return True
                used[w] = False
        mapping[v] = -1
        return False

    return extend(0)


# -- text format ---------------------------------------------------------------

def to_text(G: Digraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    edges = list(G.edges())
    loops = G.loop_list()
    lines.append(f"{G.n} {len(edges)} {len(loops)}")
    lines.extend(f"{u} {v}" for u, v in edges)
    lines.extend(str(v) for v in loops)
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Digraph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise ValueError("empty digraph text")
    try:
        n, m, nl = (int(x) for x in rows[0])
    except ValueError as exc:
        raise ValueError(f"bad header line {rows[0]!r}; expected 'n m l'") from exc
    if len(rows) != 1 + m + nl:
        raise ValueError(f"expected {m} edge lines and {nl} loop lines, found {len(rows) - 1} lines")
    edges = [(int(a), int(b)) for a, b in rows[1:1 + m]]
    loops = [int(r[0]) for r in rows[1 + m:]]
    return build(n, edges, loops)


def read_digraph(path: str) -> Digraph:
    with open(path) as fh:
        return from_text(fh.read())


def write_digraph(G: Digraph, path: str, comment: str | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(to_text(G, comment))
