"""When are constrained counts nonzero?

For a set partition ``S_1..S_l`` of the ground set, an independent set meeting
each block in exactly ``c_i`` elements exists iff every union of blocks has
rank at least the sum of the corresponding ``c_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BadParameters, NotAPartition
from .matroid import BinaryMatroid, _check_size, _insert, mask, members, rank

MAX_BLOCKS = 20


@dataclass(frozen=True)
class PartitionSpec:
    S: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "S", tuple(self.S))
        object.__setattr__(self, "c", tuple(self.c))
        if len(self.S) != len(self.c):
            raise BadParameters("blocks and counts differ in length")
        if any(ci < 0 for ci in self.c):
            raise BadParameters("negative block count")

    def validate(self, n: int) -> None:
        seen = 0
        for s in self.S:
            if seen & s:
                raise NotAPartition("blocks overlap")
            seen |= s
        if seen != (1 << n) - 1:
            raise NotAPartition("blocks do not cover the ground set")


def feasible(M: BinaryMatroid, p: PartitionSpec) -> bool:
    """Check ``rk(union of S_i, i in L) >= sum of c_i`` for every nonempty ``L``.

    Subsets ``L`` are visited in Gray-code order; since the blocks are disjoint
    the union mask is updated by a single XOR per step.
    """
    p.validate(M.n)
    l = len(p.S)
    if l > MAX_BLOCKS:
        raise BadParameters(f"at most {MAX_BLOCKS} blocks supported")
    union = 0
    total = 0
    prev = 0
    for i in range(1, 1 << l):
        gray = i ^ (i >> 1)
        j = (gray ^ prev).bit_length() - 1
        if (gray >> j) & 1:
            union |= p.S[j]
            total += p.c[j]
        else:
            union &= ~p.S[j]
            total -= p.c[j]
        prev = gray
        if rank(M, union) < total:
            return False
    return True


def witness(M: BinaryMatroid, p: PartitionSpec) -> int | None:
    """Backtracking search for an independent set with ``|A & S_i| = c_i``."""
    p.validate(M.n)
    _check_size(M)
    blocks = [members(s) for s in p.S]
    order = sorted(range(len(blocks)), key=lambda i: p.c[i])
    vecs = M.vectors()

    def place(bi: int, piv: dict[int, int], chosen: int) -> int | None:
        if bi == len(order):
            return chosen
        idx = order[bi]
        return pick(bi, blocks[idx], 0, p.c[idx], piv, chosen)

    def pick(bi: int, elems: list[int], start: int, need: int, piv: dict[int, int], chosen: int) -> int | None:
        if need == 0:
            return place(bi + 1, piv, chosen)
        for j in range(start, len(elems) - need + 1):
            e = elems[j]
            h = _insert(piv, vecs[e])
            if h < 0:
                continue
            found = pick(bi, elems, j + 1, need - 1, piv, chosen | (1 << e))
            del piv[h]
            if found is not None:
                return found
        return None

    if any(ci > len(b) for ci, b in zip(p.c, blocks)):
        return None
    return place(0, {}, 0)


def two_block(M: BinaryMatroid, R: int, a: int, b: int) -> PartitionSpec:
    return PartitionSpec((R, M.ground & ~R), (a, b))


def nonvanishing_range(M: BinaryMatroid, R: int) -> tuple[int, int]:
    """``(lo, hi)`` with ``P(M,R,a) > 0`` exactly for ``lo <= a <= hi``.

    Built from :func:`feasible` on the two-block partition ``R``, complement.
    """
    r = M.rank
    ok = [a for a in range(r + 1) if feasible(M, two_block(M, R, a, r - a))]
    return ok[0], ok[-1]


def range_formula(M: BinaryMatroid, R: int) -> tuple[int, int]:
    """Closed form of the same range: ``r - rk(X - R) .. rk(R)``."""
    return M.rank - rank(M, M.ground & ~R), rank(M, R)


def partition_from_blocks(n: int, blocks: Sequence[Sequence[int]], c: Sequence[int]) -> PartitionSpec:
    p = PartitionSpec(tuple(mask(b) for b in blocks), tuple(c))
    p.validate(n)
    return p
