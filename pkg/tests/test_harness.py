import csv
import io
import json

import pytest
from hypothesis import given, strategies as st

from ditile.digraph import complete_digraph, degrees, min_semidegree, ore_minimum
from ditile.harness import (Condition, RunManifest, SweepRecord, chain_instance, gen_random, generate,
                            is_monotone, parse_condition, parse_patterns, read_records, records_csv,
                            records_jsonl, run_sweep, sweep, verify_theorem, SweepConfig)
from ditile.solvers import find_factor


def test_gen_extremes():
    assert gen_random(5, 1.0, seed=1) == complete_digraph(5)
    assert gen_random(5, 0.0, seed=1).m == 0
    with pytest.raises(ValueError):
        gen_random(5, 1.5, seed=1)


def test_gen_enforced_semidegree():
    g = generate(30, 0.8, seed=4, enforce="delta0>=20")
    assert min_semidegree(g.graph) >= 20
    base = gen_random(30, 0.8, seed=4)
    assert set(base.edges()) | set(g.repairs) == set(g.graph.edges())


@given(st.integers(3, 10), st.floats(0, 1), st.integers(0, 10**6), st.data())
def test_gen_enforce_conditions(n, p, seed, data):
    kind = data.draw(st.sampled_from(["delta0", "delta", "ore"]))
    top = {"delta0": n - 1, "delta": 2 * n - 2, "ore": 2 * n}[kind]
    thr = data.draw(st.integers(0, top))
    cond = Condition(kind, thr, data.draw(st.sampled_from(["+-", "++", "--", "-+"])))
    G = gen_random(n, p, seed, cond)
    assert cond.holds(G)


def test_gen_infeasible():
    with pytest.raises(ValueError):
        gen_random(5, 0.5, seed=0, enforce="delta0>=5")
    with pytest.raises(ValueError):
        parse_condition("delta0=3")
    with pytest.raises(ValueError):
        Condition("bogus", 1)


def test_gen_reproducible():
    assert gen_random(12, 0.3, seed=9, enforce="ore>=15") == gen_random(12, 0.3, seed=9, enforce="ore>=15")


def test_parse_patterns():
    ps = parse_patterns("T3+ffbb+P:1,2")
    assert [p.order for p in ps] == [3, 4, 3]
    with pytest.raises(ValueError):
        parse_patterns("T3++FFF")


@pytest.mark.parametrize("name", ["balanced-hom", "extremal-all", "blowup-factor"])
def test_deterministic_suites_pass(name):
    assert verify_theorem(name).passed


def test_small_random_suites_pass():
    assert verify_theorem("orethm", sizes=(3, 6, 9), trials=30, seed=5).passed
    assert verify_theorem("ham", trials=5, seed=1).passed
    assert verify_theorem("split", count=10, seed=2).passed


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify_theorem("nope")


def test_sweep_records_and_max_point():
    recs = sweep(6, "T3", "delta0", trials=8, seed=3)
    assert [r.param for r in recs] == list(range(6))
    assert all(r.success + r.failures + r.exhausted == r.trials for r in recs)
    assert recs[-1].rate == 1.0
    assert is_monotone(recs)


def test_sweep_ore_axis_saturates_above_threshold():
    recs = sweep(9, "T3", "ore", trials=20, seed=0)
    assert all(r.rate == 1.0 for r in recs if r.param >= 11)


def test_sweep_instances_rematerialise():
    cfg = SweepConfig(9, "T3", "delta0", None, 4, 7)
    recs = sweep(9, "T3", "delta0", trials=4, seed=7)
    for r in recs:
        hits = sum(find_factor(chain_instance(cfg, t, r.param), parse_patterns("T3")) is not None
                   for t in range(4))
        assert hits == r.success


def test_sweep_validation():
    with pytest.raises(ValueError):
        sweep(10, "T3")
    with pytest.raises(ValueError):
        sweep(9, "T3", axis="nope")
    with pytest.raises(ValueError):
        sweep(9, "T3", budget=0)


def test_sweep_workers_match_serial():
    a = sweep(9, "T3", "delta", trials=6, seed=1, workers=1)
    b = sweep(9, "T3", "delta", trials=6, seed=1, workers=2)
    assert a == b


def test_reports_round_trip_and_header():
    recs = sweep(6, "FFF", "delta0", trials=3, seed=1)
    text = records_csv(recs)
    assert text.splitlines()[0] == "n,family,pattern,param,trials,success,exhausted"
    assert read_records(text) == recs
    assert read_records(records_jsonl(recs), "jsonl") == recs
    assert all(set(json.loads(l)) == set(SweepRecord.__dataclass_fields__) for l in records_jsonl(recs).splitlines())


def test_manifest_reproduces_report():
    params = {"n": 6, "pattern": "T3", "axis": "ore", "trials": 4, "values": None, "p": 0.3, "budget": 10**6}
    m1 = RunManifest("sweep", params, 11)
    r1 = records_csv(run_sweep(m1))
    m2 = RunManifest.from_json(m1.to_json())
    r2 = records_csv(run_sweep(m2))
    assert r1 == r2 and m1.outcomes == m2.outcomes
    assert m1.outcomes["success"] + m1.outcomes["failure"] + m1.outcomes["exhausted"] == 4 * len(run_sweep(m1))


def test_exhaustion_is_counted_separately():
    recs = sweep(9, "T3", "delta0", trials=3, seed=0, budget=1)
    assert any(r.exhausted for r in recs)
    assert all(r.success + r.exhausted + r.failures == 3 for r in recs)
