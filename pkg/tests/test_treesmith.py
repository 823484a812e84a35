import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sylab import treesmith as ts
from sylab.cfrac import cf_expand, evaluate, quotient_sum
from sylab.errors import BadQuotient, DegenerateRatio
from sylab.multigraph import tau, tree_ratio


def test_dualize_rules():
    leaf = ts.leaf()
    assert ts.dualize(leaf) is leaf
    b = ts.bundle_term(4)
    assert (b.T, b.F) == (4, 1)
    d = ts.dualize(b)
    assert (d.T, d.F) == (1, 4)
    t = ts.random_term(random.Random(3), 12)
    assert ts.dualize(ts.dualize(t)).signature() == t.signature()


def test_par_extend():
    t = ts.par_extend(ts.bundle_term(3))
    assert (t.T, t.F) == (4, 1)
    half = ts.dualize(ts.bundle_term(2))
    assert ts.par_extend(half).ratio == Fraction(3, 2)
    assert ts.par_extend_by(ts.leaf(), 5).ratio == 6


def test_from_cf_examples():
    t = ts.from_cf([3])
    G = ts.realize(t)
    assert G.v == 2 and G.m == 4
    assert tau(ts.realize(t, with_marked=False)) == 3
    assert tree_ratio(G, G.marked) == 3
    t = ts.from_cf([2, 3])
    assert (t.T, t.F) == (7, 3) and ts.realize(t).m == 6
    G = ts.realize(t)
    assert tree_ratio(G, G.marked) == Fraction(7, 3)
    assert ts.from_cf([1, 2, 2]).ratio == Fraction(7, 5)
    with pytest.raises(BadQuotient):
        ts.from_cf([2, 0])
    with pytest.raises(BadQuotient):
        ts.from_cf([])


def test_sum_examples():
    s = ts.sum_terms(ts.dualize(ts.bundle_term(2)), ts.dualize(ts.bundle_term(3)))
    assert s.ratio == Fraction(5, 6)
    G = ts.realize(s)
    assert G.m == 6 and tree_ratio(G, G.marked) == Fraction(5, 6)
    x = ts.from_cf([2, 3])
    assert ts.sum_terms(x, ts.dualize(ts.leaf())).ratio == x.ratio + 1
    a, b = ts.from_cf([1, 4]), ts.from_cf([3, 2])
    assert ts.sum_terms(a, b).ratio == ts.sum_terms(b, a).ratio


def test_exact_tree_examples():
    tc = ts.exact_tree_graph(5)
    assert tau(tc.graph) == 5 and tc.edges == 4
    assert tau(ts.exact_tree_graph(3).graph) == 3
    assert tau(ts.exact_tree_graph(1).graph) == 1
    assert tau(ts.exact_tree_graph(2).graph) == 2
    assert tau(ts.exact_tree_graph_factored(12)) == 12
    with pytest.raises(DegenerateRatio):
        ts.exact_tree_graph(0)


def test_large_exact():
    for N in (1_000_003, 999_999_937):
        tc = ts.exact_tree_graph(N)
        assert tau(tc.graph) == N
        assert tc.edges == sum(tc.quotients)


def test_ratio_examples():
    for A, B in [(7, 5), (1, 1), (7, 2), (2, 7), (5, 1), (1, 5), (999_983, 1000), (14, 10)]:
        rc = ts.ratio_graph(A, B)
        assert tree_ratio(rc.graph, rc.edge) == Fraction(A, B)
        assert rc.reported_edges == rc.graph.m
    g, e = ts.ratio_graph(7, 2)
    assert tree_ratio(g, e) == Fraction(7, 2)
    with pytest.raises(DegenerateRatio):
        ts.ratio_graph(0, 3)


def test_deep_terms_do_not_recurse():
    t = ts.from_cf([1] * 3000 + [2])
    d = ts.dualize(t)
    assert d.ratio == 1 / t.ratio
    assert ts.realize(d).m == t.leaves + 1


def test_bundle_realization_large():
    G = ts.realize(ts.bundle_term(5000))
    assert G.m == 5001 and tree_ratio(G, G.marked) == 5000


@given(st.lists(st.integers(1, 6), min_size=1, max_size=6))
def test_from_cf_matches_value(q):
    t = ts.from_cf(q)
    assert t.ratio == evaluate(q)
    assert t.leaves == sum(q)
    G = ts.realize(t)
    assert G.m == t.leaves + 1
    assert tree_ratio(G, G.marked) == t.ratio


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_term_counts_are_realized(s1, s2):
    rng = random.Random(s1 * 7 + s2)
    t1, t2 = ts.random_term(rng, 6), ts.random_term(rng, 6)
    s = ts.sum_terms(t1, t2)
    G = ts.realize(s)
    assert tau(ts.realize(s, with_marked=False)) == s.T
    assert tree_ratio(G, G.marked) == t1.ratio + t2.ratio


@given(st.integers(1, 3000), st.integers(1, 3000))
def test_ratio_graph_random(A, B):
    rc = ts.ratio_graph(A, B)
    assert rc.term.ratio == Fraction(A, B)
    # the Laplacian oracle is cubic in V; long paths only get the term check
    if rc.graph.v <= 120:
        assert tree_ratio(rc.graph, rc.edge) == Fraction(A, B)
    assert rc.reported_edges == rc.graph.m
