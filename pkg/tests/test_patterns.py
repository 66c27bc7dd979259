import itertools

import pytest
from hypothesis import given, strategies as st

from ditile.digraph import directed_cycle, directed_path, is_isomorphic, weak_components, induced, mask_of
from ditile.patterns import (C3, T3, canonical_word, check_level_map, cycle_from_word, hom_into_directed_path,
                             is_balanced, parse_word, path_blowup, path_from_word, random_tree,
                             reflect_word, transitive_tournament, word_classes)
from ditile.solvers import find_embedding

words = st.integers(3, 10).flatmap(lambda n: st.text("FB", min_size=n, max_size=n))


def test_cycle_examples():
    assert is_isomorphic(cycle_from_word("FFF").graph, directed_cycle(3))
    anti = cycle_from_word("FBFB").graph
    assert all(anti.out_degree(v) in (0, 2) for v in range(4))
    assert is_isomorphic(cycle_from_word("fffff").graph, directed_cycle(5))


def test_parse_word_errors():
    with pytest.raises(ValueError):
        parse_word("FB")
    with pytest.raises(ValueError):
        parse_word("FXF")
    with pytest.raises(ValueError):
        cycle_from_word("FF")


@given(words)
def test_cycle_shape(w):
    G = cycle_from_word(w).graph
    assert G.m == len(w)
    assert all(G.out_degree(v) + G.in_degree(v) == 2 for v in range(G.n))
    assert len(weak_components(G)) == 1


def test_balanced_examples():
    assert is_balanced("FBFB") and is_balanced("FFBB")
    assert not is_balanced("FFF")


@given(words)
def test_balanced_iff_hom(w):
    lm = hom_into_directed_path(cycle_from_word(w))
    assert (lm is not None) == is_balanced(w)
    if lm is not None:
        assert check_level_map(cycle_from_word(w).graph, lm)
        assert len(w) % 2 == 0


def test_hom_examples():
    lm = hom_into_directed_path(cycle_from_word("FBFB"))
    assert lm.level == (1, 2, 1, 2) and lm.k == 2 and lm.sizes() == (2, 2)
    assert hom_into_directed_path(C3) is None


@given(st.integers(1, 9), st.integers(0, 10**6))
def test_trees_have_level_maps(h, seed):
    T = random_tree(h, seed)
    assert T.graph.m == h - 1
    assert len(weak_components(T.graph)) == 1
    lm = hom_into_directed_path(T)
    assert lm is not None and check_level_map(T.graph, lm)
    # H sits inside the path blow-up given by its fibres
    assert find_embedding(path_blowup(lm.sizes()).graph, T) is not None


def test_random_tree_reproducible():
    assert random_tree(8, 5).graph == random_tree(8, 5).graph


def test_level_map_components_minimise_k():
    P = path_from_word("F")
    from ditile.digraph import disjoint_union
    G = disjoint_union(P.graph, directed_path(3))
    lm = hom_into_directed_path(G)
    assert lm.k == 3 and min(lm.level) == 1


def test_transitive_tournament():
    T = transitive_tournament(3)
    assert T.graph.m == 3
    assert sorted(T.graph.out_degree(v) for v in range(3)) == [0, 1, 2]
    assert all(u < v for u, v in transitive_tournament(5).graph.edges())
    with pytest.raises(ValueError):
        transitive_tournament(0)


@pytest.mark.parametrize("r", range(2, 7))
def test_tr_contains_smaller_tr_induced(r):
    big = transitive_tournament(r).graph
    emb = find_embedding(big, transitive_tournament(r - 1))
    assert emb is not None
    sub, _ = induced(big, emb.image)
    assert is_isomorphic(sub, transitive_tournament(r - 1).graph)


def test_path_blowup():
    G = path_blowup([2, 1]).graph
    assert G.m == 2 and G.in_degree(2) == 2
    assert is_isomorphic(path_blowup([1, 1, 1]).graph, directed_path(3))
    assert path_blowup([2, 3, 2]).graph.m == 12
    with pytest.raises(ValueError):
        path_blowup([])
    with pytest.raises(ValueError):
        path_blowup([1, 0])


@given(words)
def test_canonical_word_is_isomorphism_invariant(w):
    c = canonical_word(w)
    assert is_isomorphic(cycle_from_word(c).graph, cycle_from_word(w).graph)
    assert canonical_word(reflect_word(w)) == c
    assert canonical_word(w[1:] + w[0]) == c


@pytest.mark.parametrize("ell", [3, 4, 5, 6])
def test_word_classes_are_pairwise_non_isomorphic(ell):
    reps = word_classes(ell)
    for a, b in itertools.combinations(reps, 2):
        assert not is_isomorphic(cycle_from_word(a).graph, cycle_from_word(b).graph)
    every = {"".join(p) for p in itertools.product("FB", repeat=ell)}
    assert {canonical_word(w) for w in every} == set(reps)


def test_named_patterns():
    assert str(T3) == "T3" and C3.word == "FFF" and T3.order == 3
