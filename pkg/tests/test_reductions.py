from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import binary_matroids
from sylab import reductions as rd
from sylab.counting import Verdict, bases_avoiding, count_profile
from sylab.errors import LoopArgument, ParallelPair
from sylab.matroid import BinaryMatroid, contract, count_bases, enumerate_bases, from_graph, mask
from sylab.multigraph import complete, cycle


def _oracle_contracted_avoiding(M, x, y):
    return sum(1 for B in enumerate_bases(M) if B >> x & 1 and not B >> y & 1)


def _pair(M, data):
    pairs = [(x, y) for x in range(M.n) for y in range(M.n)
             if M.vec(x) and M.vec(y) and M.vec(x) != M.vec(y)]
    assume(pairs)
    return data.draw(st.sampled_from(pairs))


def test_cdc_instance_shape():
    M = from_graph(complete(4))
    inst = rd.cdc_instance(M, 0, 5)
    assert inst.M.n == M.n + 2
    assert inst.M.rank == M.rank + 1
    assert inst.M.labels[-2:] == ("u", "v")
    assert inst.R == mask([0, M.n])
    assert inst.a == 1
    assert inst.S == (M.ground & ~mask([0, 5]),)
    assert inst.c == (M.rank - 1,)


def test_cdc_rejects_bad_pairs():
    M = BinaryMatroid(2, (1, 1, 2, 0))
    with pytest.raises(ParallelPair):
        rd.cdc_instance(M, 0, 1)
    with pytest.raises(ParallelPair):
        rd.cdc_instance(M, 2, 2)
    with pytest.raises(LoopArgument):
        rd.cdc_instance(M, 0, 3)
    with pytest.raises(LoopArgument):
        rd.cdc_instance(M, 9, 0)


@given(binary_matroids(max_d=3, max_n=6, min_n=2), st.data())
def test_contracted_avoiding_matches_bases(M, data):
    x, y = _pair(M, data)
    assert rd.contracted_avoiding(M, x, y) == _oracle_contracted_avoiding(M, x, y)


@given(binary_matroids(max_d=3, max_n=6, min_n=2), st.data())
def test_cdc_identities_and_biconditional(M, data):
    x, y = _pair(M, data)
    chk = rd.cdc_identities(M, x, y)
    assert chk.counts == (chk.b_yx, chk.b_xy + chk.b_yx, chk.b_xy)
    coincide_by_sy = chk.verdict in (Verdict.EQUAL, Verdict.VANISHING)
    assert chk.coincide == coincide_by_sy
    assert (chk.gap == 0) == chk.coincide


def test_cdc_on_cycle_coincides():
    # every edge of a cycle looks the same
    chk = rd.cdc_identities(from_graph(cycle(5)), 0, 2)
    assert chk.coincide and chk.verdict == Verdict.EQUAL
    assert chk.gap == 0


def test_cdc_strict_example():
    # K4 minus one edge: edge 0 is the diagonal, edge 1 sits on a degree-2 vertex
    M = from_graph(complete(4))
    Md = BinaryMatroid(M.dim, M.cols, M.labels, 1 << 5)
    chk = rd.cdc_identities(Md, 0, 1)
    assert (chk.b_xy, chk.b_yx) == (2, 3)
    assert chk.verdict == Verdict.STRICT
    assert chk.gap == Fraction(1, 9 * 16)
    assert rd.cdc_identities(Md, 1, 2).verdict == Verdict.EQUAL


@given(binary_matroids(max_d=2, max_n=4, min_n=1), binary_matroids(max_d=2, max_n=4, min_n=1), st.data())
def test_cdcr_products(M, N, data):
    xs_ok = [i for i in range(M.n) if M.vec(i)]
    ys_ok = [i for i in range(N.n) if N.vec(i)]
    assume(xs_ok and ys_ok)
    x, y = data.draw(st.sampled_from(xs_ok)), data.draw(st.sampled_from(ys_ok))
    D, xs, ys = rd.cdcr_to_cdc(M, x, N, y)
    assert D.n == M.n + N.n and ys == M.n + y
    same = rd.cdcr_identities(M, x, N, y)
    Mx, Ny = count_bases(contract(M, 1 << x)), count_bases(contract(N, 1 << y))
    assert same == (Fraction(bases_avoiding(M, x), Mx) == Fraction(bases_avoiding(N, y), Ny))
    # the direct-sum pair feeds the coincidence reduction
    assert rd.cdc_identities(D, xs, ys).coincide == same


def test_cdcr_rejects_loops():
    with pytest.raises(LoopArgument):
        rd.cdcr_to_cdc(BinaryMatroid(1, (0,)), 0, BinaryMatroid(1, (1,)), 0)


@given(binary_matroids(max_d=3, max_n=5, min_n=2), st.data(), st.integers(1, 3))
def test_pad_keeps_profile(M, data, k):
    x, y = _pair(M, data)
    inst = rd.cdc_instance(M, x, y)
    out = rd.pad_k(inst, k)
    assert out.k == max(k, 1)
    assert out.profile().normalized == inst.profile().normalized
    assert out.verdict() == inst.verdict()


def test_pad_rejects_shrinking():
    inst = rd.cdc_instance(from_graph(cycle(3)), 0, 1)
    padded = rd.pad_k(inst, 3)
    with pytest.raises(ValueError):
        rd.pad_k(padded, 2)


def test_instance_json():
    inst = rd.cdc_instance(from_graph(cycle(3)), 0, 1)
    js = inst.to_json()
    assert js == {"R": [0, 3], "a": 1, "S": [[2]], "c": [1]}
    assert count_profile(inst.M, inst.spec).counts == inst.profile().counts
