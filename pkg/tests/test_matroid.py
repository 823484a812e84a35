from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import binary_matroids
from sylab.errors import DependentContraction, LoopArgument, SizeLimit
from sylab.matroid import (
    BinaryMatroid,
    contract,
    count_bases,
    delete,
    direct_sum,
    enumerate_bases,
    free_matroid,
    from_columns,
    from_graph,
    greedy_basis,
    independent_subsets_of_size,
    is_independent,
    iter_independent,
    loops,
    mask,
    members,
    parallel_class,
    parallel_classes,
    rank,
)
from sylab.multigraph import complete, cycle

TRIANGLE = from_columns(["10", "01", "11"])


def brute_rank(M, A):
    best = 0
    elems = members(A)
    for k in range(len(elems) + 1):
        for combo in combinations(elems, k):
            # independence by explicit XOR-span growth
            span = {0}
            ok = True
            for i in combo:
                v = M.vec(i)
                if v in span:
                    ok = False
                    break
                span |= {s ^ v for s in span}
            if ok:
                best = max(best, k)
    return best


def test_rank_examples():
    assert rank(TRIANGLE) == 2
    assert rank(TRIANGLE, 0) == 0
    assert rank(from_graph(complete(3))) == 2


def test_independence_examples():
    assert is_independent(TRIANGLE, mask([0, 1]))
    assert not is_independent(from_columns(["10", "10"]), 0b11)
    assert not is_independent(TRIANGLE, 0b111)


def test_loops_and_parallel():
    M = from_columns(["10", "01", "00"])
    assert members(loops(M)) == [2]
    assert loops(TRIANGLE) == 0
    P = from_columns(["10", "10", "01"])
    assert members(parallel_class(P, 0)) == [0, 1]
    with pytest.raises(LoopArgument):
        parallel_class(M, 2)


def test_parallel_classes_distinct_vectors():
    M = BinaryMatroid(3, tuple(range(1, 8)))
    assert [members(c) for c in parallel_classes(M)] == [[i] for i in range(7)]


def test_contract_examples():
    assert contract(TRIANGLE, 0) is TRIANGLE
    C = contract(TRIANGLE, mask([0]))
    assert rank(C, mask([1, 2])) == 1
    assert 0 in members(loops(C))
    with pytest.raises(DependentContraction):
        contract(TRIANGLE, 0b111)


def test_small_counts():
    assert count_bases(from_graph(complete(3))) == 3
    assert count_bases(TRIANGLE) == 3
    assert count_bases(from_graph(cycle(4))) == 4
    assert members(greedy_basis(from_graph(complete(3)))) == [0, 1]
    assert count_bases(free_matroid(4)) == 1


def test_size_limit(monkeypatch):
    monkeypatch.setenv("SY_LAB_BRUTE_LIMIT", "3")
    with pytest.raises(SizeLimit):
        count_bases(free_matroid(4))


@given(binary_matroids(), st.data())
def test_rank_matches_bruteforce(M, data):
    A = data.draw(st.integers(0, M.ground))
    assert rank(M, A) == brute_rank(M, A)


@given(binary_matroids())
def test_contract_drops_rank(M):
    for A in independent_subsets_of_size(M, min(2, M.rank)):
        C = contract(M, A)
        assert C.n == M.n
        assert rank(C) == rank(M) - bin(A).count("1")
        assert A & ~loops(C) == 0


@given(binary_matroids(max_n=6))
def test_deletion_contraction_recurrence(M):
    for x in range(M.n):
        if M.vec(x) == 0:
            continue
        D = delete(M, 1 << x)
        minus = count_bases(D) if D.rank == M.rank else 0
        assert minus + count_bases(contract(M, 1 << x)) == count_bases(M)


@given(binary_matroids(max_d=3, max_n=4), binary_matroids(max_d=3, max_n=4))
def test_direct_sum_multiplies(M, N):
    S = direct_sum(M, N)
    assert S.n == M.n + N.n and S.rank == M.rank + N.rank
    assert count_bases(S) == count_bases(M) * count_bases(N)


@given(binary_matroids(max_n=6))
def test_independent_sets_are_hereditary(M):
    sets = set(iter_independent(M))
    for A in sets:
        for i in members(A):
            assert A & ~(1 << i) in sets
    assert set(enumerate_bases(M)) == {A for A in sets if bin(A).count("1") == M.rank}
