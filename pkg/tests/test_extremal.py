import pytest

from ditile.digraph import degrees, min_semidegree, ore_minimum, to_text, weak_components
from ditile.extremal import (SMALLEST, elzahar_tripartite, make, ore_t3, r_partite_tr, tripartite_odd,
                             two_cliques, verify)
from ditile.patterns import T3, cycle_from_word, word_classes
from ditile.solvers import find_cycle_list_tiling, find_factor, enumerate_copies


def test_two_cliques_sizes():
    assert two_cliques(10, 3).sizes == (5, 5)
    assert two_cliques(12, 3).sizes == (5, 7)
    assert two_cliques(40, 3).sizes == (20, 20)
    assert degrees(two_cliques(10, 3).graph).delta_total == 8
    with pytest.raises(ValueError):
        two_cliques(5, 3)
    with pytest.raises(ValueError):
        two_cliques(9, 2)  # odd n cannot split into two odd orders


def test_two_cliques_no_t3_factor():
    assert find_factor(two_cliques(12, 3).graph, T3) is None


def test_tripartite_odd():
    inst = tripartite_odd(9, 1)
    assert inst.sizes == (2, 4, 3) and min_semidegree(inst.graph) == 5
    assert tripartite_odd(15, 2).sizes == (2, 7, 6)
    assert min_semidegree(tripartite_odd(15, 2).graph) == 8
    for w in ("FFF", "FFB"):
        assert find_factor(inst.graph, cycle_from_word(w)) is None
    with pytest.raises(ValueError):
        tripartite_odd(10, 1)


def test_elzahar():
    assert elzahar_tripartite(10, 2).sizes == (1, 5, 4)
    assert min_semidegree(elzahar_tripartite(10, 2).graph) == 5
    assert elzahar_tripartite(12, 2).sizes == (1, 6, 5)
    assert min_semidegree(elzahar_tripartite(12, 2).graph) == 6
    G = elzahar_tripartite(9, 3).graph
    for ws in (["FFF"] * 3, ["FFB"] * 3, ["FFF", "FFB", "FFB"]):
        assert find_cycle_list_tiling(G, ws) is None
    with pytest.raises(ValueError):
        elzahar_tripartite(10, 3)


def test_elzahar_double_edges_only():
    G = elzahar_tripartite(11, 3).graph
    assert all(G.has_edge(v, u) for u, v in G.edges())


def test_ore_t3():
    inst = ore_t3(6)
    assert inst.sizes == (3, 2, 1)
    assert ore_minimum(inst.graph, "+-") == 6
    assert ore_minimum(ore_t3(9).graph, "+-") == 10
    assert find_factor(inst.graph, T3) is None
    w = inst.graph.n - 1
    assert enumerate_copies(inst.graph, T3, anchor=(0, w)) == []
    with pytest.raises(ValueError):
        ore_t3(7)


def test_r_partite():
    assert r_partite_tr(9, 3).sizes == (3, 2, 4)
    assert ore_minimum(r_partite_tr(9, 3).graph) == 10
    assert r_partite_tr(8, 2).sizes == (3, 5)
    assert find_factor(r_partite_tr(8, 2).graph, make("r_partite_tr", 8, 2).absent[0].patterns[0]) is None
    assert find_factor(r_partite_tr(9, 3).graph, T3) is None
    with pytest.raises(ValueError):
        r_partite_tr(6, 3)


@pytest.mark.parametrize("family,params", SMALLEST)
def test_smallest_instances_verify(family, params):
    rep = verify(make(family, *params))
    assert rep.passed, "\n".join(rep.lines())
    assert any(c.name.startswith("absent") and c.detail == "exact search" for c in rep.checks)


def test_structural_proof_beyond_solver_range():
    rep = verify(two_cliques(40, 3), solver_limit=16)
    assert rep.passed
    assert all(c.detail == "structural proof" for c in rep.checks if c.name.startswith("absent"))


def test_unverified_without_structure():
    rep = verify(two_cliques(40, 3), solver_limit=16, structural=False)
    assert not rep.passed and not rep.failed
    assert {c.status for c in rep.checks if c.name.startswith("absent")} == {"unverified"}


def test_verify_catches_wrong_claim():
    inst = ore_t3(6)
    inst.claims[0] = type(inst.claims[0])("ore+-", "==", 7)
    assert verify(inst).failed


def test_deterministic_serialisation():
    for family, params in SMALLEST:
        a, b = make(family, *params), make(family, *params)
        assert a.to_text() == b.to_text() and a.sidecar() == b.sidecar()


def test_sidecar_is_key_value():
    text = tripartite_odd(9, 1).sidecar()
    pairs = dict(line.split("=", 1) for line in text.splitlines() if not line.startswith("absent"))
    assert pairs["family"] == "tripartite_odd" and pairs["claim.delta0"] == "5" and pairs["sizes"] == "2,4,3"


def test_unknown_family():
    with pytest.raises(ValueError):
        make("nope", 3)


def test_elzahar_large_builds_and_verifies_structurally():
    inst = elzahar_tripartite(41, 5)
    assert inst.absent and all(len(a.words) == 5 for a in inst.absent)
    assert verify(inst).passed
