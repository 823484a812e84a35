from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sylab.cfrac import (
    cf_expand,
    convergents,
    evaluate,
    ntd_quality,
    ntd_search,
    quotient_sum,
    tree_quality,
)
from sylab.errors import BadParameters, NoCandidate, ZeroDenominator


def test_expansions():
    e = cf_expand(7, 5)
    assert e.quotients == (1, 2, 2) and e.qsum == 5 and str(e) == "[1; 2, 2]"
    assert cf_expand(3, 1).quotients == (3,) and str(cf_expand(3, 1)) == "[3]"
    assert cf_expand(5, 2).quotients == (2, 2) and cf_expand(5, 2).qsum == 4
    with pytest.raises(ZeroDenominator):
        cf_expand(1, 0)


def test_quotient_sums():
    assert quotient_sum(7, 3) == 5
    assert quotient_sum(12, 1) == 12
    assert quotient_sum(8, 5) == 5
    assert cf_expand(8, 5).quotients == (1, 1, 1, 2)
    assert quotient_sum(2, 7) == quotient_sum(7, 2)
    assert quotient_sum(100, 1, cap=10) > 10


def test_ntd_search():
    best = ntd_search(7, 5)
    cost = lambda m: max(quotient_sum(m, 7), quotient_sum(5 - m, 7))
    assert cost(best) == min(cost(m) for m in range(1, 5))
    assert best == min(m for m in range(1, 5) if cost(m) == cost(best))
    assert ntd_search(3, 2) == 1
    assert 1 <= ntd_search(9, 9) <= 8
    with pytest.raises(NoCandidate):
        ntd_search(1, 1)
    with pytest.raises(BadParameters):
        ntd_search(10, 3)


def test_ntd_sampled_regime_is_deterministic():
    A, B = 1_500_007, 1_000_003
    assert ntd_search(A, B, budget=300) == ntd_search(A, B, budget=300)


def test_quality_helpers():
    assert ntd_quality(10, 3) is None and tree_quality(10, 3) is None
    assert ntd_quality(1000, 10) > 0 and tree_quality(1000, 10) > 0


@given(st.integers(0, 10 ** 12), st.integers(1, 10 ** 12))
def test_expand_evaluate_roundtrip(p, q):
    e = cf_expand(p, q)
    assert evaluate(e.quotients) == Fraction(p, q)
    assert convergents(e.quotients)[-1] == Fraction(p, q)
    assert quotient_sum(p, q) == e.qsum
    if len(e.quotients) > 1:
        assert e.quotients[-1] >= 2
