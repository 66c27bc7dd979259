import math
import random
from fractions import Fraction

import pytest

from ditile.constructive import (DeadEnd, HypothesisViolation, PackingFailure, PartitionStats, QSpec,
                                 RecursionFailure, SplitFailure, blowup_iterate, expand_tiling, blowup_factor,
                                 greedy_tr_nested, is_t3_factor, loop_condition, pair_condition,
                                 random_split, recursive_cycle_partition, round_cycle_tiling, seed_factor,
                                 semidegree_in, split_bound_ok, t3_augment, t3_count, tiling_extend,
                                 cycle_tiling_in_rounds)
from ditile.digraph import (build, complete_digraph, directed_cycle, disjoint_union, edgeless,
                            min_semidegree)
from ditile.harness import gen_random
from ditile.patterns import C3, T3, transitive_tournament
from ditile.solvers import Embedding, Tiling, find_factor, max_tiling_anytime
from ditile.validate import embedding_ok, tiling_ok

from conftest import random_digraph


# -- augmentation --------------------------------------------------------------------

def test_augment_single_triangle():
    G = complete_digraph(3)
    start = Tiling((Embedding(C3, (0, 1, 2)),))
    tr = t3_augment(G, start)
    assert [k for k, _ in tr.steps] == ["local-swap"]
    assert is_t3_factor(G, tr.final)


def test_augment_two_triangles():
    G = complete_digraph(6)
    start = Tiling((Embedding(C3, (0, 1, 2)), Embedding(C3, (3, 4, 5))))
    tr = t3_augment(G, start)
    assert [k for k, _ in tr.steps] == ["local-swap", "local-swap"]
    assert tr.to_log() == "step 0 local-swap tiles=0\nstep 1 local-swap tiles=1\n"


def _ore_instances(n, count, seed):
    thr = math.ceil(Fraction(4 * n, 3) - 1)
    return [gen_random(n, 0.2, seed=f"{seed}/{i}", enforce=f"ore>={thr}") for i in range(count)]


@pytest.mark.parametrize("n", [6, 9, 12])
def test_augment_invariants_on_ore_hosts(n):
    kinds = set()
    for G in _ore_instances(n, 40, "aug"):
        start = seed_factor(G, prefer_cycles=True)
        assert start is not None
        tr = t3_augment(G, start)
        counts = [t3_count(s) for s in tr.states]
        assert all(a < b for a, b in zip(counts, counts[1:]))
        assert len(tr.steps) <= n // 3
        assert all(tiling_ok(G, s, spanning=True) for s in tr.states)
        assert is_t3_factor(G, tr.final)
        assert find_factor(G, T3) is not None
        kinds.update(k for k, _ in tr.steps)
    if n >= 9:
        assert "seven-edge-swap" in kinds


def test_augment_detects_failed_hypothesis():
    G = disjoint_union(directed_cycle(3), directed_cycle(3))
    start = Tiling((Embedding(C3, (0, 1, 2)), Embedding(C3, (3, 4, 5))))
    with pytest.raises(HypothesisViolation):
        t3_augment(G, start)


def test_augment_preconditions():
    with pytest.raises(ValueError):
        t3_augment(complete_digraph(4), Tiling())
    with pytest.raises(ValueError):
        t3_augment(complete_digraph(6), Tiling((Embedding(C3, (0, 1, 2)),)))


# -- nested greedy T_r ---------------------------------------------------------------

def test_greedy_tr_complete():
    e = greedy_tr_nested(complete_digraph(5), 3, 0)
    assert 0 in e.map and embedding_ok(complete_digraph(5), T3.graph, e.map)


def test_greedy_tr_dead_end():
    with pytest.raises(DeadEnd):
        greedy_tr_nested(directed_cycle(4), 3, 0)


def _dominant_dense(n, r, seed):
    rng = random.Random(seed)
    rows = [set() for _ in range(n)]
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < 0.3:
                rows[u].add(v)
    need = (r - 1) * n // r + 1  # r * d > (r - 1) n
    for u in range(n):
        if len(rows[u]) < need:
            rest = [v for v in range(n) if v != u and v not in rows[u]]
            rows[u].update(rng.sample(rest, need - len(rows[u])))
    return build(n, [(u, v) for u in range(n) for v in rows[u]])


@pytest.mark.parametrize("seed", range(5))
def test_greedy_tr_every_vertex_under_dominant_bound(seed):
    G = _dominant_dense(20, 3, seed)
    assert all(3 * G.dominant_degree(v) > 2 * 20 for v in range(20))
    for z in range(20):
        e = greedy_tr_nested(G, 3, z)
        assert z in e.map and embedding_ok(G, T3.graph, e.map)


# -- extension and blow-ups ----------------------------------------------------------

def test_tiling_extend_complete():
    G = complete_digraph(7)
    M = Tiling((Embedding(T3, (0, 1, 2)), Embedding(T3, (3, 4, 5))))
    ext = tiling_extend(G, 3, M)
    assert ext.coverage() == 7 and tiling_ok(G, ext)
    assert sorted(e.pattern.order for e in ext.embeddings) == [3, 4]


def test_tiling_extend_no_gain():
    G = disjoint_union(complete_digraph(3), edgeless(2))
    M = Tiling((Embedding(T3, (0, 1, 2)),))
    assert tiling_extend(G, 3, M).coverage() == 3


@pytest.mark.parametrize("seed", range(8))
def test_tiling_extend_is_greedy_maximal(seed):
    G = random_digraph(14, 0.6, seed)
    M, _ = max_tiling_anytime(G, T3)
    ext = tiling_extend(G, 3, M)
    assert tiling_ok(G, ext)
    plain = [e for e in ext.embeddings if e.pattern.order == 3]
    for z in range(G.n):
        if ext.covered >> z & 1:
            continue
        for T in plain:
            assert G.out_adj[z] & T.image != T.image and G.in_adj[z] & T.image != T.image


def _pair_condition_host(n, r, gamma, seed):
    # a double-edged clique L plus vertices whose out- (or in-) degree clears the bound
    rng = random.Random(seed)
    need = math.ceil((1 - 1 / r + gamma) * n)
    low = rng.randint(0, n - need)
    edges = {(u, v) for u in range(low) for v in range(low) if u != v}
    for z in range(low, n):
        nbrs = rng.sample([v for v in range(n) if v != z], rng.randint(need, n - 1))
        out = rng.random() < 0.5
        edges.update((z, v) if out else (v, z) for v in nbrs)
    return build(n, sorted(edges))


@pytest.mark.parametrize("seed", range(20))
def test_extension_gain_under_pair_condition(seed):
    n, r, gamma = 30, 3, 0.2
    G = _pair_condition_host(n, r, gamma, seed)
    assert pair_condition(G, r, gamma)
    M, proven = max_tiling_anytime(G, transitive_tournament(r), budget=500_000)
    assert tiling_ok(G, M)
    ext = tiling_extend(G, r, M)
    assert tiling_ok(G, ext) and ext.coverage() >= M.coverage()
    if proven and M.coverage() <= (1 - gamma) * n:
        assert ext.coverage() - M.coverage() >= gamma ** 2 * n / 3


@pytest.mark.parametrize("r,t", [(2, 2), (2, 4), (3, 3), (3, 6)])
def test_blowup_expansion(r, t):
    for plus_one in (False, True):
        B, tiling = blowup_factor(r, t, plus_one)
        assert B.n == (r + plus_one) * t
        assert tiling_ok(B, tiling, spanning=True)
        assert all(e.pattern.order == r for e in tiling.embeddings)


def test_expand_tiling_rejects_bad_input():
    with pytest.raises(ValueError):
        expand_tiling(3, 2, Tiling())
    with pytest.raises(ValueError):
        expand_tiling(2, 2, Tiling((Embedding(transitive_tournament(4), (0, 1, 2, 3)),)))


def test_blowup_single_looped_vertex():
    res = blowup_iterate(build(1, loops=[0]), 2, 2, 0.2)
    assert res.graph == complete_digraph(4, loops=True)
    assert res.tiling.coverage() == 4 and tiling_ok(res.graph, res.tiling, spanning=True)


def test_blowup_transitive_triangle():
    res = blowup_iterate(T3.graph, 3, 1, 0.2)
    assert res.graph.n == 9 and res.tiling.size == 3
    assert tiling_ok(res.graph, res.tiling, spanning=True)


def test_blowup_coverage_on_reduced_host():
    # vertex 0 dominates everyone, everything else is looped and pairwise double
    k, gamma, r, s = 6, 0.4, 2, 3
    edges = [(0, v) for v in range(1, k)] + [(u, v) for u in range(1, k) for v in range(1, k) if u != v]
    R = build(k, edges, loops=range(1, k))
    res = blowup_iterate(R, r, s, gamma, exact_limit=0)
    assert res.hypotheses == {"pairs": True, "loops": True}
    assert res.tiling.coverage() >= (1 - gamma / 2) * k * r ** s
    assert all(a <= b for a, b in zip(res.fractions, res.fractions[1:]))
    assert tiling_ok(res.graph, res.tiling)


def test_blowup_size_guard():
    with pytest.raises(ValueError):
        blowup_iterate(complete_digraph(4), 2, 20, 0.2)


def test_conditions():
    G = build(3, [(0, 1), (1, 0), (0, 2)])
    assert loop_condition(build(2, loops=[0, 1]), 2, 0.1)
    assert not loop_condition(G, 2, 0.1)
    assert pair_condition(complete_digraph(4), 3, 0.1)
    assert not pair_condition(directed_cycle(4), 2, 0.1)


# -- splits and cycle tilings --------------------------------------------------------

def test_split_complete():
    G = complete_digraph(20)
    sp = random_split(G, 10, seed=1)
    assert sp.U1.bit_count() == 10 and sp.U1 & sp.U2 == 0 and sp.U1 | sp.U2 == G.full
    assert sp.attempts == 1


def test_split_double_edge():
    sp = random_split(build(2, [(0, 1), (1, 0)]), 1, seed=0)
    assert {sp.U1, sp.U2} == {1, 2}


@pytest.mark.parametrize("seed", range(10))
def test_split_dense_random(seed):
    G = random_digraph(60, 0.8, seed)
    sp = random_split(G, 30, 100, seed=seed)
    d0, n = min_semidegree(G), G.n
    for U in (sp.U1, sp.U2):
        u = U.bit_count()
        assert semidegree_in(G, U) >= d0 / n * u - u ** (2 / 3) - 1e-9


def test_split_errors():
    with pytest.raises(ValueError):
        random_split(complete_digraph(4), 0)
    with pytest.raises(SplitFailure):
        random_split(disjoint_union(complete_digraph(30), complete_digraph(30)), 30, retries=0)


def test_split_bound_exact_for_cubes():
    G = edgeless(8)
    assert split_bound_ok(G, 0xFF, 4, 8)  # 0 >= 4 - 4


def test_round_tiling_complete():
    G = complete_digraph(30)
    t = round_cycle_tiling(G, QSpec(("FFF",) * 3), 2, seed=0)
    assert len(t) == 6 and tiling_ok(G, t)


def test_round_tiling_precondition():
    with pytest.raises(ValueError):
        round_cycle_tiling(complete_digraph(20), QSpec(("FFFFF",) * 2), 2, gamma=0.2)


def test_qspec():
    q = QSpec(("fff", "FFBB", "FBF"))
    assert q.words == ("FFF", "FFBB", "FBF") and q.q == {3: 2, 4: 1} and q.L == 4 and q.order == 10


def test_round_tiling_counts_per_round():
    G = complete_digraph(40)
    spec = QSpec(("FFF", "FBF", "FFFF"))
    t = round_cycle_tiling(G, spec, 3, seed=2)
    assert tiling_ok(G, t)
    words = sorted(e.pattern.word for e in t.embeddings)
    assert words == sorted(spec.words * 3)


def test_round_tiling_reports_stage():
    with pytest.raises(PackingFailure) as info:
        round_cycle_tiling(edgeless(30), QSpec(("FFF",)), 2, seed=0, retries=2, split_tries=2)
    assert info.value.stage == "path-packing"


def test_round_tiling_dense_random_hosts():
    ok = 0
    for s in range(10):
        G = gen_random(60, 0.5, seed=f"round/{s}", enforce="delta0>=38")
        t = round_cycle_tiling(G, QSpec(("FFF", "FBF", "FFFF", "FFBB")), 2, seed=s)
        ok += tiling_ok(G, t) and len(t) == 8
    assert ok == 10


def test_cycle_tiling_in_rounds_greedy_remainder():
    G = complete_digraph(40)
    t = cycle_tiling_in_rounds(G, ["FFF"] * 5 + ["FFBB"] * 2, 2, seed=3)
    assert tiling_ok(G, t) and sorted(e.pattern.word for e in t.embeddings) == sorted(["FFF"] * 5 + ["FFBB"] * 2)


def test_recursive_complete_hosts():
    t = recursive_cycle_partition(complete_digraph(12), ["FFF"] * 4, seed=0)
    assert tiling_ok(complete_digraph(12), t, spanning=True)
    t = recursive_cycle_partition(complete_digraph(10), ["FFFFF", "FBFBB"], seed=0)
    assert tiling_ok(complete_digraph(10), t, spanning=True)


def test_recursive_dense_random_hosts():
    stats = PartitionStats()
    words = ["F" * 10, "FB" * 5, "FFFFFBBBBB", "FFBFFBFBBB"]
    for s in range(8):
        G = gen_random(40, 0.5, seed=f"rec/{s}", enforce="delta0>=26")
        t = recursive_cycle_partition(G, words, seed=s, stats=stats)
        assert tiling_ok(G, t, spanning=True)
        assert sorted(e.pattern.word for e in t.embeddings) == sorted(words)
    assert stats.hamilton_calls >= 8 * 4


def test_recursive_failure_reports_subproblem():
    with pytest.raises(ValueError):
        recursive_cycle_partition(complete_digraph(10), ["FFF"])
    with pytest.raises(RecursionFailure) as info:
        recursive_cycle_partition(directed_cycle(6), ["FFF", "FFF"], seed=0, retries=3)
    assert info.value.size in (3, 6)
