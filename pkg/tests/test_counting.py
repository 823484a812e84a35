from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import binary_matroids
from sylab.counting import (
    ConstraintSpec,
    Verdict,
    basis_ratio,
    count_profile,
    count_via_ratio_product,
    gen_mason_verdict,
    multinomial,
    sy_verdict,
    truncated_sum_counts,
)
from sylab.equality import build_double_matroid
from sylab.errors import BadParameters, BadRange, InvariantViolation, OverlappingConstraints
from sylab.matroid import BinaryMatroid, count_bases, free_matroid, from_columns, from_graph, mask
from sylab.multigraph import bundle, complete, cycle

K3 = from_graph(complete(3))
TRIANGLE = from_columns(["10", "01", "11"])


def test_profile_examples():
    prof = count_profile(K3, ConstraintSpec(mask([0])))
    assert prof.counts == {0: 1, 1: 2, 2: 0}
    D, R = build_double_matroid(from_columns(["10", "01"]))
    prof = count_profile(D, ConstraintSpec(R))
    assert prof.counts == {0: 1, 1: 2, 2: 1}
    assert prof.normalized == {0: 1, 1: 1, 2: 1}


def test_multinomial():
    assert multinomial(4, (1, 1, 2)) == 12
    assert multinomial(3, (1, 3, -1)) == 0
    assert multinomial(3, (1, 1)) == 0


def test_overlap_rejected():
    with pytest.raises(OverlappingConstraints):
        ConstraintSpec(0b011, (0b010,), (1,))


def test_sy_examples():
    assert sy_verdict(TRIANGLE, ConstraintSpec(mask([0])), 1) is Verdict.STRICT
    D, R = build_double_matroid(TRIANGLE)
    assert sy_verdict(D, ConstraintSpec(R), 1) is Verdict.EQUAL
    M = from_columns(["10", "01", "00"])
    assert sy_verdict(M, ConstraintSpec(mask([2])), 1) is Verdict.VANISHING
    with pytest.raises(BadRange):
        sy_verdict(TRIANGLE, ConstraintSpec(0), 2)


def test_basis_ratio_examples():
    assert basis_ratio(K3, 0) == Fraction(1, 2)
    assert basis_ratio(from_graph(bundle(4)), 0) == 3
    assert count_via_ratio_product(K3) == 3
    assert count_via_ratio_product(free_matroid(3)) == 1
    assert count_via_ratio_product(from_graph(cycle(4))) == 4


def test_mason_free_matroid_is_equality_case():
    M = free_matroid(5)
    prof = count_profile(M, ConstraintSpec(0), "independent")
    assert prof.counts == {a: comb(5, a) for a in range(6)}
    for a in range(1, 5):
        assert gen_mason_verdict(M, ConstraintSpec(0), a) is Verdict.EQUAL


def test_mason_large_girth_equal():
    # every 3-subset of these 5 vectors in F2^4 is independent
    M = from_columns(["1000", "0100", "0010", "0001", "1111"])
    for a in (1,):
        assert gen_mason_verdict(M, ConstraintSpec(0), a) is Verdict.EQUAL
    assert gen_mason_verdict(M, ConstraintSpec(0), 2) is Verdict.EQUAL


def test_truncation_identity_k3():
    spec = ConstraintSpec(0, (mask([0]),), (1,))
    m, counts = truncated_sum_counts(K3, spec)
    I = count_profile(K3, spec, "independent")
    assert m == 2
    assert counts == {a: I.B(a) * comb(m, a + 1) for a in counts}
    with pytest.raises(BadParameters):
        truncated_sum_counts(K3, ConstraintSpec(0, (mask([0]),), (4,)))


@given(binary_matroids(max_n=6), st.data())
def test_log_concavity(M, data):
    R = data.draw(st.integers(0, M.ground))
    rest = M.ground & ~R
    S = data.draw(st.integers(0, M.ground)) & rest
    c = data.draw(st.integers(0, M.rank))
    prof = count_profile(M, ConstraintSpec(R, (S,), (c,)))
    assert sum(prof.counts.values()) <= count_bases(M)
    for a in range(1, M.rank):
        p = prof.P(a)
        assert p * p >= prof.P(a + 1) * prof.P(a - 1)


@given(binary_matroids(max_n=6))
def test_ratio_product_and_bound(M):
    assert count_via_ratio_product(M) == count_bases(M)
    for x in range(M.n):
        if M.vec(x):
            assert basis_ratio(M, x) <= M.n


@given(binary_matroids(max_d=3, max_n=5), st.data())
def test_mason_never_violated(M, data):
    S = data.draw(st.integers(0, M.ground))
    c = data.draw(st.integers(0, M.rank))
    spec = ConstraintSpec(0, (S,), (c,))
    prof = count_profile(M, spec, "independent")
    for a in range(1, min(M.rank - 1, prof.m - 1) + 1):
        gen_mason_verdict(M, spec, a)


@given(binary_matroids(max_d=3, max_n=4), st.data())
def test_truncation_identity(M, data):
    S = data.draw(st.integers(0, M.ground))
    c = data.draw(st.integers(0, min(2, bin(S).count("1"))))
    spec = ConstraintSpec(0, (S,), (c,))
    m, counts = truncated_sum_counts(M, spec)
    prof = count_profile(M, spec, "independent")
    assert all(counts[a] == prof.B(a) * comb(m, a + c) for a in counts)


def test_violation_raises():
    from sylab.counting import CountProfile, sy_verdict_from_profile

    fake = CountProfile({0: 1, 1: 1, 2: 4}, {0: Fraction(1), 1: Fraction(1), 2: Fraction(4)}, "bases", 2)
    with pytest.raises(InvariantViolation):
        sy_verdict_from_profile(fake, 1)
