import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import binary_matroids
from sylab.counting import ConstraintSpec, count_profile
from sylab.errors import NotAPartition
from sylab.matroid import from_columns, from_graph, is_independent, iter_independent, mask, members
from sylab.multigraph import complete
from sylab.vanishing import (
    PartitionSpec,
    feasible,
    nonvanishing_range,
    partition_from_blocks,
    range_formula,
    two_block,
    witness,
)

U24 = from_columns(["10", "01", "11", "11"])


def test_examples():
    p = partition_from_blocks(4, [[0, 1], [2, 3]], [0, 0])
    assert feasible(U24, p) and witness(U24, p) == 0
    p = partition_from_blocks(4, [[0, 1], [2, 3]], [2, 1])
    assert not feasible(U24, p) and witness(U24, p) is None
    K = from_graph(complete(3))
    p = partition_from_blocks(3, [[0, 1], [2]], [2, 0])
    w = witness(K, p)
    assert feasible(K, p) and members(w) == [0, 1]


def test_ranges():
    K = from_graph(complete(3))
    assert nonvanishing_range(K, K.ground) == (2, 2)
    assert nonvanishing_range(K, 0) == (0, 0)
    assert nonvanishing_range(K, mask([0])) == (0, 1) == range_formula(K, mask([0]))


def test_not_a_partition():
    with pytest.raises(NotAPartition):
        partition_from_blocks(4, [[0, 1], [1, 2, 3]], [1, 1])
    with pytest.raises(NotAPartition):
        partition_from_blocks(4, [[0, 1]], [1])


def _oracle(M, p):
    for A in iter_independent(M):
        if all(bin(A & s).count("1") == c for s, c in zip(p.S, p.c)):
            return True
    return False


@given(binary_matroids(max_d=3, max_n=6), st.data())
def test_feasible_matches_oracle(M, data):
    labels = data.draw(st.lists(st.integers(0, 2), min_size=M.n, max_size=M.n))
    blocks = [mask(i for i in range(M.n) if labels[i] == b) for b in range(3)]
    c = tuple(data.draw(st.integers(0, bin(b).count("1"))) for b in blocks)
    p = PartitionSpec(tuple(blocks), c)
    f = feasible(M, p)
    w = witness(M, p)
    assert f == _oracle(M, p) == (w is not None)
    if w is not None:
        assert is_independent(M, w)
        assert all(bin(w & s).count("1") == ci for s, ci in zip(p.S, c))


@given(binary_matroids(max_d=3, max_n=6), st.data())
def test_range_matches_profile(M, data):
    R = data.draw(st.integers(0, M.ground))
    prof = count_profile(M, ConstraintSpec(R))
    lo, hi = nonvanishing_range(M, R)
    assert [a for a in range(M.rank + 1) if prof.B(a)] == list(range(lo, hi + 1))
    assert (lo, hi) == range_formula(M, R)
    assert feasible(M, two_block(M, R, lo, M.rank - lo))
