"""Transitive-tournament tilings: nested greedy copies, one-vertex extensions
of a tiling, the blow-up expansion of T_r and T_{r+1} tiles, and the blow-up
iteration that grows a near-perfect T_r-tiling.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..digraph import Digraph, bits, blow_up
from ..patterns import transitive_tournament
from ..solvers import Budget, Embedding, Tiling, max_tiling_anytime
from ..validate import tiling_ok


class DeadEnd(RuntimeError):
    """The nested neighbourhood intersection ran out before a full T_r was built."""


def _complete(G: Digraph, S: int) -> bool:
    return all(G.out_adj[v] & S == S & ~(1 << v) for v in bits(S))


def _dominant_is_out(G: Digraph, v: int) -> bool:
    return G.out_degree(v) >= G.in_degree(v)


def greedy_tr_nested(G: Digraph, r: int, z: int | None = None) -> Embedding:
    """Copy of T_r through z built from nested dominant-direction neighbourhoods.

    Vertices joined *out* to the current pool go on top of the tournament,
    vertices joined *in* go to the bottom; the pool is always the set of
    vertices dominated by every top and dominating every bottom.  Once the pool
    induces a complete digraph it supplies the middle ranks; otherwise a pool
    vertex with dominant degree above (1 - 1/r)n is taken next.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if z is None:
        err = None
        for v in range(G.n):
            try:
                return greedy_tr_nested(G, r, v)
            except DeadEnd as exc:
                err = exc
        raise err or DeadEnd("empty host")
    n = G.n
    tops: list[int] = []
    bottoms: list[int] = []
    if _dominant_is_out(G, z):
        tops.append(z)
        pool = G.out_adj[z]
    else:
        bottoms.append(z)
        pool = G.in_adj[z]
    middle: list[int] = []
    while True:
        need = r - len(tops) - len(bottoms)
        if need <= 0:
            break
        if pool.bit_count() >= need and _complete(G, pool):
            middle = list(bits(pool))[:need]
            break
        pivot = next((v for v in bits(pool) if r * G.dominant_degree(v) > (r - 1) * n), None)
        if pivot is None:
            what = "empty intersection" if not pool else "no pivot"
            raise DeadEnd(f"{what}: pool {list(bits(pool))} after tops={tops} bottoms={bottoms}")
        if _dominant_is_out(G, pivot):
            tops.append(pivot)
            pool &= G.out_adj[pivot]
        else:
            bottoms.append(pivot)
            pool &= G.in_adj[pivot]
    order = tops + middle + bottoms[::-1]
    return Embedding(transitive_tournament(r), tuple(order))


def tiling_extend(G: Digraph, r: int, M: Tiling) -> Tiling:
    """Upgrade tiles of a T_r-tiling to T_{r+1} by uncovered vertices joined to a whole tile.

    Uncovered vertices are handled in index order and each takes the first
    tile that it dominates or is dominated by; a tile is upgraded at most once.
    """
    Tr, Tr1 = transitive_tournament(r), transitive_tournament(r + 1)
    tiles = list(M.embeddings)
    for e in tiles:
        if e.pattern.order != r:
            raise ValueError("M must be a T_r-tiling")
    upgraded = [False] * len(tiles)
    uncovered = G.full & ~M.covered
    for z in bits(uncovered):
        for j, T in enumerate(tiles):
            if upgraded[j]:
                continue
            tm = T.image
            if G.out_adj[z] & tm == tm:
                tiles[j] = Embedding(Tr1, (z, *T.map))
            elif G.in_adj[z] & tm == tm:
                tiles[j] = Embedding(Tr1, (*T.map, z))
            else:
                continue
            upgraded[j] = True
            break
    return Tiling(tuple(e if e.pattern.order == r + 1 else Embedding(Tr, e.map) for e in tiles))


def expand_tiling(t: int, r: int, tiling: Tiling) -> Tiling:
    """Image of a {T_r, T_{r+1}}-tiling of B as a T_r-tiling of blow_up(B, t), r | t.

    Vertex v of B becomes v*t + a.  A T_r tile becomes t parallel copies; a
    T_{r+1} tile is covered by t/r copies omitting each rank in turn.
    """
    if t % r:
        raise ValueError("r must divide t")
    Tr = transitive_tournament(r)
    q = t // r
    out: list[Embedding] = []
    for e in tiling.embeddings:
        ranks = e.map
        if len(ranks) == r:
            for a in range(t):
                out.append(Embedding(Tr, tuple(v * t + a for v in ranks)))
        elif len(ranks) == r + 1:
            for omit in range(r + 1):
                for k in range(q):
                    img = []
                    for rank, v in enumerate(ranks):
                        if rank == omit:
                            continue
                        pos = (omit if omit < rank else omit - 1) * q + k
                        img.append(v * t + pos)
                    out.append(Embedding(Tr, tuple(img)))
        else:
            raise ValueError(f"tile of order {len(ranks)} is neither T_{r} nor T_{r + 1}")
    return Tiling(tuple(out))


def blowup_factor(r: int, t: int, plus_one: bool = False) -> tuple[Digraph, Tiling]:
    """The blow-up T_r(t) (or T_{r+1}(t)) with its T_r-factor from :func:`expand_tiling`."""
    h = r + 1 if plus_one else r
    base = transitive_tournament(h)
    B = blow_up(base.graph, t)
    return B, expand_tiling(t, r, Tiling((Embedding(base, tuple(range(h))),)))


def pair_condition(G: Digraph, r: int, slack: float) -> bool:
    """Every pair is a double edge or has an endpoint of dominant degree >= (1-1/r+slack)|G|."""
    thr = (1 - Fraction(1, r) + Fraction(slack).limit_denominator(10**6)) * G.n
    high = 0
    for v in range(G.n):
        if G.dominant_degree(v) >= thr:
            high |= 1 << v
    for x in range(G.n):
        if high >> x & 1:
            continue
        double = G.out_adj[x] & G.in_adj[x]
        low_partners = G.full & ~high & ~double & ~(1 << x)
        if low_partners:
            return False
    return True


def loop_condition(G: Digraph, r: int, slack: float) -> bool:
    """Every loopless vertex has dominant degree >= (1-1/r+slack)|G|."""
    thr = (1 - Fraction(1, r) + Fraction(slack).limit_denominator(10**6)) * G.n
    return all(G.dominant_degree(v) >= thr for v in range(G.n) if not G.loops >> v & 1)


@dataclass
class BlowupResult:
    graph: Digraph
    tiling: Tiling
    fractions: list[Fraction] = field(default_factory=list)
    gains: list[int] = field(default_factory=list)
    hypotheses: dict[str, bool] = field(default_factory=dict)


def blowup_iterate(Rstar: Digraph, r: int, s: int, gamma: float, max_vertices: int = 4096,
                   exact_limit: int = 64, budget: int | None = 200_000, check: bool = True) -> BlowupResult:
    """T_r-tiling of Rstar(r^s) grown round by round.

    Each round extends the current tiling by single vertices joined to whole
    tiles when coverage is below (1 - gamma/2), then expands it into the next
    r-blow-up.  Blow-ups of at most ``exact_limit`` vertices are re-maximised
    by exact search (seeded with the expanded tiling, so never worse).
    """
    if s < 0:
        raise ValueError("s must be non-negative")
    if Rstar.n * r ** s > max_vertices:
        raise ValueError(f"blow-up of order {Rstar.n * r ** s} exceeds the limit {max_vertices}")
    Tr = transitive_tournament(r)
    res = BlowupResult(Rstar, Tiling())
    res.hypotheses = {
        "pairs": pair_condition(Rstar, r, gamma / 2),
        "loops": loop_condition(Rstar, r, gamma / 2),
    }
    B = Rstar
    M, _ = max_tiling_anytime(B, Tr, Budget(budget))
    res.fractions.append(Fraction(M.coverage(), B.n) if B.n else Fraction(1))
    target = 1 - Fraction(gamma).limit_denominator(10**6) / 2
    for _ in range(s):
        before = M.coverage() * r
        ext = tiling_extend(B, r, M) if M.coverage() < target * B.n else M
        B = blow_up(B, r)
        M = expand_tiling(r, r, ext)
        if check:
            assert tiling_ok(B, M), "expanded tiling is not a valid tiling of the blow-up"
        if B.n <= exact_limit:
            M, _ = max_tiling_anytime(B, Tr, Budget(budget), start=M)
        res.gains.append(M.coverage() - before)
        res.fractions.append(Fraction(M.coverage(), B.n))
    res.graph, res.tiling = B, M
    return res

