"""Independent checks for search output.

Deliberately uses nothing from the search code: only edge membership queries
on the host and the pattern's own edge list.
"""
from __future__ import annotations

from .digraph import Digraph


def embedding_ok(G: Digraph, pattern_graph: Digraph, image: tuple[int, ...] | list[int]) -> bool:
    if len(image) != pattern_graph.n or len(set(image)) != len(image):
        return False
    if any(not 0 <= v < G.n for v in image):
        return False
    return all(G.has_edge(image[a], image[b]) for a, b in pattern_graph.edges())


def tiling_ok(G: Digraph, tiling, spanning: bool = False) -> bool:
    """Edge preservation per tile, pairwise disjointness, and optionally full coverage."""
    seen: set[int] = set()
    for emb in tiling.embeddings:
        if not embedding_ok(G, emb.pattern.graph, emb.map):
            return False
        if seen & set(emb.map):
            return False
        seen |= set(emb.map)
    return len(seen) == G.n if spanning else True
