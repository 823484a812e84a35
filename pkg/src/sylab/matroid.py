"""Binary matroids over F2 with a fixed ground set.

Columns are stored as Python ints used as bit vectors; subsets of the ground
set are int bitmasks (bit ``i`` set means element ``i`` is in the subset).

Contraction and deletion never change the ground set: contracted elements are
projected to zero (they become loops) and deleted elements are flagged as
forbidden, so element indices stay stable across ``M``, ``M - x`` and ``M / x``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import DependentContraction, LoopArgument, SizeLimit

DEFAULT_BRUTE_LIMIT = 24


def brute_limit() -> int:
    """Largest ground set the enumerators accept (env SY_LAB_BRUTE_LIMIT)."""
    raw = os.environ.get("SY_LAB_BRUTE_LIMIT")
    return int(raw) if raw else DEFAULT_BRUTE_LIMIT


# -- subset masks -------------------------------------------------------------

def mask(items: Iterable[int]) -> int:
    out = 0
    for i in items:
        out |= 1 << i
    return out


def members(m: int) -> list[int]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def popcount(m: int) -> int:
    return m.bit_count()


# -- F2 elimination helpers ---------------------------------------------------

def _insert(piv: dict[int, int], v: int) -> int:
    """Reduce ``v`` against ``piv`` (leading bit -> vector); add it if nonzero.

    Returns the leading bit that was added, or -1 when ``v`` was dependent.
    """
    while v:
        h = v.bit_length() - 1
        b = piv.get(h)
        if b is None:
            piv[h] = v
            return h
        v ^= b
    return -1


def span_rank(vectors: Iterable[int]) -> int:
    piv: dict[int, int] = {}
    r = 0
    for v in vectors:
        if _insert(piv, v) >= 0:
            r += 1
    return r


def _rref(vectors: Iterable[int]) -> dict[int, int]:
    """Fully reduced echelon basis keyed by pivot bit."""
    piv: dict[int, int] = {}
    for v in vectors:
        for h in sorted(piv, reverse=True):
            if (v >> h) & 1:
                v ^= piv[h]
        if not v:
            continue
        h = v.bit_length() - 1
        for k in list(piv):
            if (piv[k] >> h) & 1:
                piv[k] ^= v
        piv[h] = v
    return piv


def _reduce(v: int, piv: dict[int, int]) -> int:
    for h in sorted(piv, reverse=True):
        if (v >> h) & 1:
            v ^= piv[h]
    return v


# -- the matroid type ---------------------------------------------------------

@dataclass(frozen=True)
class BinaryMatroid:
    """Matroid represented by ``n`` columns in F2^dim.

    ``deleted`` is a mask of forbidden elements; they behave as loops for every
    rank computation but keep their column so the representation round-trips.
    """

    dim: int
    cols: tuple[int, ...]
    labels: tuple[str, ...] = field(default=())
    deleted: int = 0

    def __post_init__(self):
        object.__setattr__(self, "cols", tuple(int(c) for c in self.cols))
        for i, c in enumerate(self.cols):
            if c < 0 or c >> self.dim:
                raise ValueError(f"column {i} does not fit in dimension {self.dim}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(len(self.cols))))
        elif len(self.labels) != len(self.cols):
            raise ValueError("labels and columns differ in length")
        else:
            object.__setattr__(self, "labels", tuple(self.labels))
        if self.deleted >> len(self.cols):
            raise ValueError("deleted mask exceeds ground set")

    @property
    def n(self) -> int:
        return len(self.cols)

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def vec(self, i: int) -> int:
        """Effective column of element ``i`` (zero when deleted)."""
        return 0 if (self.deleted >> i) & 1 else self.cols[i]

    def vectors(self) -> list[int]:
        return [self.vec(i) for i in range(self.n)]

    @property
    def rank(self) -> int:
        return span_rank(self.vectors())

    def __repr__(self):
        bits = ",".join(format(c, f"0{self.dim}b") if self.dim else "" for c in self.cols)
        extra = f", deleted={members(self.deleted)}" if self.deleted else ""
        return f"BinaryMatroid(dim={self.dim}, cols=[{bits}]{extra})"


def from_columns(cols: Sequence[Sequence[int] | str], labels: Sequence[str] = ()) -> BinaryMatroid:
    """Build from bit strings or 0/1 lists, most significant coordinate first."""
    ints = []
    dim = None
    for c in cols:
        s = c if isinstance(c, str) else "".join(str(int(b)) for b in c)
        if dim is None:
            dim = len(s)
        elif len(s) != dim:
            raise ValueError("columns of unequal length")
        ints.append(int(s, 2) if s else 0)
    return BinaryMatroid(dim or 0, tuple(ints), tuple(labels))


def free_matroid(n: int) -> BinaryMatroid:
    return BinaryMatroid(n, tuple(1 << i for i in range(n)))


# -- rank-level operations ----------------------------------------------------

def rank(M: BinaryMatroid, A: int | None = None) -> int:
    if A is None:
        A = M.ground
    return span_rank(M.vec(i) for i in members(A))


def is_independent(M: BinaryMatroid, A: int) -> bool:
    return rank(M, A) == popcount(A)


def loops(M: BinaryMatroid) -> int:
    return mask(i for i in range(M.n) if M.vec(i) == 0)


def nonloops(M: BinaryMatroid) -> int:
    return M.ground & ~loops(M)


def parallel_class(M: BinaryMatroid, x: int) -> int:
    """Non-loops ``y`` with ``rank{x, y} = 1``.

    Over F2 two nonzero vectors are dependent exactly when they are equal.
    """
    v = M.vec(x)
    if v == 0:
        raise LoopArgument(f"element {x} is a loop")
    return mask(y for y in range(M.n) if M.vec(y) == v)


def parallel_classes(M: BinaryMatroid) -> list[int]:
    """All parallel classes, ordered by smallest member."""
    seen: dict[int, int] = {}
    order: list[int] = []
    for i in range(M.n):
        v = M.vec(i)
        if v == 0:
            continue
        if v not in seen:
            seen[v] = 0
            order.append(v)
        seen[v] |= 1 << i
    return [seen[v] for v in order]


def contract(M: BinaryMatroid, A: int) -> BinaryMatroid:
    """``M / A`` on the same ground set, by projecting to the quotient by span(A)."""
    if not A:
        return M
    if not is_independent(M, A):
        raise DependentContraction(f"{members(A)} is not independent")
    piv = _rref(M.vec(i) for i in members(A))
    cols = tuple(0 if (A >> i) & 1 else _reduce(c, piv) for i, c in enumerate(M.cols))
    return BinaryMatroid(M.dim, cols, M.labels, M.deleted)


def delete(M: BinaryMatroid, A: int) -> BinaryMatroid:
    return BinaryMatroid(M.dim, M.cols, M.labels, M.deleted | A)


def direct_sum(M: BinaryMatroid, N: BinaryMatroid) -> BinaryMatroid:
    """Block-diagonal stack; ``M`` occupies the high coordinates and low indices."""
    cols = tuple(c << N.dim for c in M.cols) + N.cols
    return BinaryMatroid(M.dim + N.dim, cols, M.labels + N.labels, M.deleted | (N.deleted << M.n))


def from_graph(G) -> BinaryMatroid:
    """Graphic matroid via the F2 vertex-edge incidence matrix (edge order kept)."""
    cols = tuple((1 << u) ^ (1 << w) for u, w, _ in G.edges)
    labels = tuple(f"e{eid}" for _, _, eid in G.edges)
    return BinaryMatroid(G.v, cols, labels)


# -- enumeration --------------------------------------------------------------

def _check_size(M: BinaryMatroid) -> None:
    limit = brute_limit()
    if M.n > limit:
        raise SizeLimit(f"n = {M.n} exceeds the enumeration limit {limit}")


def iter_independent(M: BinaryMatroid, size: int | None = None) -> Iterator[int]:
    """Independent sets (all sizes, or exactly ``size``) in increasing-index DFS order."""
    _check_size(M)
    vecs = M.vectors()
    n = M.n

    def rec(i: int, piv: dict[int, int], m: int, k: int) -> Iterator[int]:
        if size is None or k == size:
            yield m
            if size is not None:
                return
        if size is not None and n - i < size - k:
            return
        for j in range(i, n):
            h = _insert(piv, vecs[j])
            if h < 0:
                continue
            yield from rec(j + 1, piv, m | (1 << j), k + 1)
            del piv[h]

    yield from rec(0, {}, 0, 0)


def enumerate_bases(M: BinaryMatroid) -> list[int]:
    return list(iter_independent(M, M.rank))


def count_bases(M: BinaryMatroid) -> int:
    return sum(1 for _ in iter_independent(M, M.rank))


def greedy_basis(M: BinaryMatroid) -> int:
    """Ascending-index greedy scan."""
    piv: dict[int, int] = {}
    out = 0
    for i in range(M.n):
        if _insert(piv, M.vec(i)) >= 0:
            out |= 1 << i
    return out


def independent_subsets_of_size(M: BinaryMatroid, k: int, within: int | None = None) -> Iterator[int]:
    """Independent ``k``-subsets of ``within`` in lexicographic order of index tuples."""
    pool = members(M.ground if within is None else within)
    for combo in combinations(pool, k):
        A = mask(combo)
        if is_independent(M, A):
            yield A
