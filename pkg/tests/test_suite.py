import json
from dataclasses import replace

import pytest

from sylab import suite
from sylab.errors import SizeLimit
from sylab.matroid import brute_limit, mask, members

SMALL = suite.SuiteConfig(
    max_n=3,
    max_d=2,
    max_vertices=3,
    max_edges=4,
    fixtures=False,
    cf_lists=40,
    exact_hi=40,
    exact_random=4,
    exact_random_max=10 ** 6,
    ratio_pairs=12,
    ratio_max=300,
)


@pytest.fixture(scope="module")
def small_report():
    return suite.run_criteria(SMALL)


def test_small_config_passes(small_report):
    for k, rep in small_report["criteria"].items():
        assert rep["passed"], (k, rep["examples"])
        assert rep["checked"] > 0


def test_universe_sizes():
    from math import comb

    # multisets of n columns from 2^d vectors
    assert len(list(suite.binary_universe(2, 3))) == sum(comb(4 + n - 1, n) for n in range(1, 4))
    graphs = list(suite.graph_universe(3, 4))
    # up to isomorphism: the path and the triangle on three vertices, the bundles on two
    assert all(i.M.n <= 4 for i in graphs)
    keys = [i.key for i in graphs]
    assert len(keys) == len(set(keys))
    assert "gr/2/0-1" in keys and "gr/3/0-1,0-2,1-2" in keys


def test_graph_universe_is_up_to_isomorphism():
    seen = {}
    for inst in suite.graph_universe(4, 4):
        assert inst.M.n <= 4
        seen[inst.key] = inst
    # two labelled paths on three vertices must collapse to one key
    assert sum(1 for k in seen if k.startswith("gr/3/") and k.count("-") == 2) == 1


def test_size_limit():
    with pytest.raises(SizeLimit):
        suite.run_criteria(replace(SMALL, max_n=brute_limit() + 1))
    with pytest.raises(ValueError):
        replace(SMALL, criteria=(9,)).validate()
    with pytest.raises(ValueError):
        replace(SMALL, shards=0).validate()


def test_scheme_blocks_are_disjoint():
    outside = mask([0, 2, 3, 5, 6, 7])
    (b,) = suite.scheme_blocks(outside, 1)
    assert members(b) == [0, 3, 6]
    b1, b2 = suite.scheme_blocks(outside, 2)
    assert b1 & b2 == 0 and (b1 | b2) & ~outside == 0
    assert members(b1) == [0, 5] and members(b2) == [2, 6]


def test_set_partitions_bell_numbers():
    assert [sum(1 for _ in suite.set_partitions(list(range(n)), n)) for n in range(6)] == [1, 1, 2, 5, 15, 52]
    assert sum(1 for _ in suite.set_partitions(list(range(4)), 2)) == 8


def test_report_is_deterministic_across_shards(tmp_path):
    cfg = replace(SMALL, criteria=(1, 2, 3, 7, 8))
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    suite.run_suite(replace(cfg, out=str(a)))
    suite.run_suite(replace(cfg, out=str(b), shards=3))
    ja, jb = json.loads(a.read_text()), json.loads(b.read_text())
    ja["config"].pop("shards")
    jb["config"].pop("shards")
    assert ja == jb
    suite.run_suite(replace(cfg, out=str(b)))
    assert a.read_bytes() == b.read_bytes()


def test_failures_are_reported_and_replayable(monkeypatch):
    bad_key = suite.universe(SMALL)[5].key

    def flaky(inst, config):
        o = suite.Outcome(checked=1)
        if inst.key == bad_key:
            o.fail(inst, reason="planted")
        return o

    monkeypatch.setitem(suite.CHECKS, 1, flaky)
    rep = suite.run_criteria(replace(SMALL, criteria=(1,)))["criteria"]["1"]
    assert not rep["passed"] and rep["failures"] == 1
    assert rep["examples"] == [{"key": bad_key, "reason": "planted"}]

    (dump,) = rep["dumps"]
    assert dump == suite.dump_instance(suite.find_instance(SMALL, bad_key), 1)
    assert suite.replay(dump).failures == [{"key": bad_key, "reason": "planted"}]


def test_replay_matches_direct_check():
    inst = suite.find_instance(SMALL, "gr/3/0-1,0-2,1-2")
    for k in suite.CHECKS:
        dump = json.loads(json.dumps(suite.dump_instance(inst, k)))
        a = suite.replay(dump, SMALL)
        b = suite.CHECKS[k](inst, SMALL)
        assert (a.checked, a.failures) == (b.checked, b.failures)


def test_find_instance_missing():
    with pytest.raises(KeyError):
        suite.find_instance(SMALL, "bin/nope")


def test_fixture_flags():
    o = suite.check_fixture_flags()
    assert o.checked == 4 and not o.failures
