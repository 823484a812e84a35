"""Pair-count matrices on the ground set and exact checks of their properties.

For a level ``a`` the matrix ``C(M, R, a)`` has entry ``(x, y)`` equal to the
number of compatible words of ``M/{x,y}`` at level ``a - 1``; words list a
basis with its ``R`` part first.  One pass over the bases of ``M`` fills every
level at once, because the bases of ``M/{x,y}`` are exactly ``B - {x, y}`` for
the bases ``B`` containing both.

Inertia is computed by integer congruence reduction, so ``n+ <= 1`` is decided
exactly.  Floating point only appears in the optional numpy spot checks, and
even there the arithmetic is int64 with an overflow guard.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial, gcd, lcm
from typing import Sequence

import numpy as np

from .counting import ConstraintSpec, count_profile
from .errors import BadRange, NotSymmetric, PreconditionUnmet
from .matroid import (
    BinaryMatroid,
    contract,
    enumerate_bases,
    is_independent,
    members,
    parallel_classes,
)

Matrix = tuple[tuple[int, ...], ...]

T_SAMPLE = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1))
SPOT_SEED = 20240607
SPOT_VECTORS = 64


# -- counting words and pair tables -------------------------------------------

def _bases_members(M: BinaryMatroid, bases: Sequence[int] | None) -> list[list[int]]:
    return [members(B) for B in (enumerate_bases(M) if bases is None else bases)]


def comp_count(M: BinaryMatroid, R: int, a: int, bases: Sequence[int] | None = None) -> int:
    """Number of compatible words at level ``a``: ``a! (r-a)! B(M, R, a)``."""
    r = M.rank
    if not 0 <= a <= r:
        return 0
    B = count_profile(M, ConstraintSpec(R), bases=bases).B(a)
    return factorial(a) * factorial(r - a) * B


def compatible_words(M: BinaryMatroid, R: int, a: int) -> list[tuple[int, ...]]:
    """All words ``x_1..x_r`` spelling a basis with exactly the first ``a`` letters in ``R``."""
    out = []
    for B in enumerate_bases(M):
        inside = [x for x in members(B) if (R >> x) & 1]
        outside = [x for x in members(B) if not (R >> x) & 1]
        if len(inside) != a:
            continue
        for p in permutations(inside):
            for q in permutations(outside):
                out.append(p + q)
    return out


def _zero(n: int) -> list[list[int]]:
    return [[0] * n for _ in range(n)]


def _freeze(A: list[list[int]]) -> Matrix:
    return tuple(tuple(row) for row in A)


def pair_tables(bases: list[list[int]], R: int, n: int) -> dict[int, list[list[int]]]:
    """``level -> counts[x][y]`` of bases holding ``x != y`` with ``|B & R| - [x in R] - [y in R] = level``."""
    tables: dict[int, list[list[int]]] = {}
    for B in bases:
        j = sum((R >> x) & 1 for x in B)
        for x in B:
            jx = j - ((R >> x) & 1)
            for y in B:
                if y == x:
                    continue
                lev = jx - ((R >> y) & 1)
                T = tables.get(lev)
                if T is None:
                    T = tables[lev] = _zero(n)
                T[x][y] += 1
    return tables


def _weight(rank: int, b: int) -> int:
    """Orderings of a basis of ``M/{x,y}`` at level ``b - 1`` (zero outside the range)."""
    lo, hi = b - 1, rank - b - 1
    if lo < 0 or hi < 0:
        return 0
    return factorial(lo) * factorial(hi)


def _C_from_tables(tables: dict[int, list[list[int]]], rank: int, b: int, n: int) -> Matrix:
    w = _weight(rank, b)
    T = tables.get(b - 1)
    if not w or T is None:
        return _freeze(_zero(n))
    return _freeze([[w * v for v in row] for row in T])


def build_C(M: BinaryMatroid, R: int, a: int, bases: Sequence[int] | None = None) -> Matrix:
    r = M.rank
    if r < 2 or not 1 <= a <= r - 1:
        raise BadRange(f"a = {a} outside [1, {r - 1}] (rank {r})")
    return build_C_any(M, R, a, bases)


def build_C_any(M: BinaryMatroid, R: int, b: int, bases: Sequence[int] | None = None) -> Matrix:
    """Same as :func:`build_C` but returns the zero matrix for out-of-range levels."""
    bm = _bases_members(M, bases)
    return _C_from_tables(pair_tables(bm, R, M.n), M.rank, b, M.n)


def build_C_explicit(M: BinaryMatroid, R: int, a: int) -> Matrix:
    """Entry-by-entry definition through the contraction ``M/{x,y}``."""
    n = M.n
    C = _zero(n)
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            pair = (1 << x) | (1 << y)
            if not is_independent(M, pair):
                continue
            C[x][y] = comp_count(contract(M, pair), R, a - 1)
    return _freeze(C)


def build_C_words(M: BinaryMatroid, R: int, a: int) -> Matrix:
    """Entries read off compatible words of ``M`` itself at levels ``a`` and ``a +- 1``."""
    n = M.n
    C = _zero(n)
    for w in compatible_words(M, R, a):
        x, y = w[0], w[-1]
        if (R >> x) & 1 and not (R >> y) & 1:
            C[x][y] += 1
            C[y][x] += 1
    for w in compatible_words(M, R, a + 1):
        if len(w) >= 2 and (R >> w[0]) & 1 and (R >> w[1]) & 1:
            C[w[0]][w[1]] += 1
    for w in compatible_words(M, R, a - 1) if a >= 1 else []:
        if len(w) >= 2 and not (R >> w[-1]) & 1 and not (R >> w[-2]) & 1:
            C[w[-2]][w[-1]] += 1
    return _freeze(C)


def local_matrices(M: BinaryMatroid, R: int, a: int, bases: Sequence[int] | None = None) -> list[Matrix]:
    """``C(M/x, R, a-1)`` for every ``x`` (zero matrix for loops).

    Bases of ``M/x`` are ``B - x`` for bases ``B`` containing ``x``.
    """
    n = M.n
    r = M.rank
    bm = _bases_members(M, bases)
    w = _weight(r - 1, a - 1)
    out: list[list[list[int]]] = [_zero(n) for _ in range(n)]
    target = a - 2
    if w:
        for B in bm:
            j = sum((R >> x) & 1 for x in B)
            for x in B:
                jx = j - ((R >> x) & 1)
                for y in B:
                    if y == x:
                        continue
                    jy = jx - ((R >> y) & 1)
                    for z in B:
                        if z == x or z == y:
                            continue
                        if jy - ((R >> z) & 1) == target:
                            out[x][y][z] += w
    return [_freeze(A) for A in out]


# -- exact linear algebra -----------------------------------------------------

def _as_int_matrix(A) -> list[list[int]]:
    rows = [list(r) for r in A]
    den = 1
    for row in rows:
        for v in row:
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
    return [[int(v * den) for v in row] for row in rows]


def is_symmetric(A) -> bool:
    n = len(A)
    return all(len(A[i]) == n for i in range(n)) and all(A[i][j] == A[j][i] for i in range(n) for j in range(i))


def inertia(A) -> tuple[int, int, int]:
    """Exact ``(n+, n0, n-)`` of a symmetric rational matrix.

    Fraction-free symmetric elimination: pivot on a nonzero diagonal entry,
    replace the rest by ``p * A' - a a^T`` (negated if ``p < 0``) and divide by
    the gcd.  When the diagonal is zero but an entry ``a_ij`` is not, row and
    column ``j`` are added into ``i``, which puts ``2 a_ij`` on the diagonal.
    """
    if not is_symmetric(A):
        raise NotSymmetric("matrix is not symmetric")
    M = _as_int_matrix(A)
    pos = neg = zero = 0
    while M:
        n = len(M)
        k = next((i for i in range(n) if M[i][i]), None)
        if k is None:
            hit = next(((i, j) for i in range(n) for j in range(i + 1, n) if M[i][j]), None)
            if hit is None:
                zero += n
                break
            i, j = hit
            for c in range(n):
                M[i][c] += M[j][c]
            for r_ in range(n):
                M[r_][i] += M[r_][j]
            k = i
        p = M[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        col = [M[i][k] for i in range(n) if i != k]
        rest = [[M[i][j] for j in range(n) if j != k] for i in range(n) if i != k]
        sgn = 1 if p > 0 else -1
        g = 0
        for i, row in enumerate(rest):
            ci = col[i]
            for j in range(len(row)):
                v = sgn * (p * row[j] - ci * col[j])
                row[j] = v
                g = gcd(g, v)
        if g > 1:
            rest = [[v // g for v in row] for row in rest]
        M = rest
    return pos, zero, neg


def matvec(A, v) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def bilinear(u, A, v):
    return sum(x * y for x, y in zip(u, matvec(A, v)))


def support(A) -> int:
    return sum(1 << i for i, row in enumerate(A) if any(row))


def support_connected(A) -> bool:
    """Connectivity of the graph on ``supp(A)`` with an edge wherever ``A_ij != 0``."""
    sup = members(support(A))
    if not sup:
        return True
    seen = {sup[0]}
    stack = [sup[0]]
    while stack:
        i = stack.pop()
        for j, v in enumerate(A[i]):
            if v and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(sup)


# -- the context --------------------------------------------------------------

@dataclass(frozen=True)
class AtlasContext:
    M: BinaryMatroid
    R: int
    a: int
    C_a: Matrix
    C_prev: Matrix
    t: Fraction = Fraction(1, 2)
    s: Fraction | None = None
    bases: tuple[int, ...] = field(default=(), repr=False)

    @property
    def n(self) -> int:
        return self.M.n

    @property
    def f(self) -> list[int]:
        return [(self.R >> x) & 1 for x in range(self.n)]

    @property
    def g(self) -> list[int]:
        return [1 - ((self.R >> x) & 1) for x in range(self.n)]

    @property
    def h(self) -> list[Fraction]:
        return [self.t if (self.R >> x) & 1 else 1 - self.t for x in range(self.n)]

    @property
    def z(self) -> list[Fraction] | None:
        if self.s is None:
            return None
        return [Fraction(fi) - self.s * gi for fi, gi in zip(self.f, self.g)]

    def mixed(self, t: Fraction | None = None) -> tuple[int, Matrix]:
        """``(den, den * (t C_a + (1-t) C_{a-1}))`` as an integer matrix."""
        t = self.t if t is None else Fraction(t)
        num, den = t.numerator, t.denominator
        A = tuple(
            tuple(num * x + (den - num) * y for x, y in zip(ra, rb)) for ra, rb in zip(self.C_a, self.C_prev)
        )
        return den, A


def atlas_context(
    M: BinaryMatroid,
    R: int,
    a: int,
    t: Fraction | str | int = Fraction(1, 2),
    s: Fraction | None = None,
    bases: Sequence[int] | None = None,
) -> AtlasContext:
    r = M.rank
    if r < 2 or not 1 <= a <= r - 1:
        raise BadRange(f"a = {a} outside [1, {r - 1}] (rank {r})")
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise BadRange("t must lie in [0, 1]")
    bl = tuple(enumerate_bases(M) if bases is None else bases)
    tables = pair_tables([members(B) for B in bl], R, M.n)
    return AtlasContext(
        M,
        R,
        a,
        _C_from_tables(tables, r, a, M.n),
        _C_from_tables(tables, r, a - 1, M.n),
        t,
        s,
        bl,
    )


# -- hyperbolicity ------------------------------------------------------------

@lru_cache(maxsize=64)
def _spot_vectors(n: int, count: int, seed: int) -> np.ndarray:
    """Random rationals cleared of denominators row by row; cached per shape."""
    rng = random.Random(seed * 1009 + n)
    rows = []
    for _ in range(count):
        fr = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(n)]
        den = 1
        for q in fr:
            den = lcm(den, q.denominator)
        rows.append([int(q * den) for q in fr])
    out = np.array(rows, dtype=object)
    out.flags.writeable = False
    return out


def hyp_spot_check(A: Matrix, count: int = SPOT_VECTORS, seed: int = SPOT_SEED) -> bool:
    """``<v,Aw>^2 >= <v,Av><w,Aw>`` on deterministic pairs with ``<w,Aw> > 0``."""
    n = len(A)
    if n == 0:
        return True
    V = _spot_vectors(n, count, seed)
    W = np.roll(V, 1, axis=0)
    big = max((abs(x) for row in A for x in row), default=0)
    vmax = max((abs(int(x)) for x in V.flat), default=0)
    if big * n * n * vmax * vmax < 2**62:
        Ai = np.array(A, dtype=np.int64)
        Vi, Wi = V.astype(np.int64), W.astype(np.int64)
        vAw = np.einsum("ij,jk,ik->i", Vi, Ai, Wi)
        vAv = np.einsum("ij,jk,ik->i", Vi, Ai, Vi)
        wAw = np.einsum("ij,jk,ik->i", Wi, Ai, Wi)
        triples = zip(vAw.tolist(), vAv.tolist(), wAw.tolist())
    else:
        Ao = np.array(A, dtype=object)
        triples = ((int(v @ Ao @ w), int(v @ Ao @ v), int(w @ Ao @ w)) for v, w in zip(V, W))
    for vw, vv, ww in triples:
        if ww > 0 and vw * vw < vv * ww:
            return False
    return True


@dataclass(frozen=True)
class HypReport:
    inertia: dict[Fraction, tuple[int, int, int]]
    spot: dict[Fraction, bool]

    @property
    def ok(self) -> bool:
        return all(i[0] <= 1 for i in self.inertia.values()) and all(self.spot.values())


def hyperbolic_check(ctx: AtlasContext, ts: Sequence[Fraction] = T_SAMPLE, spot: bool = True) -> HypReport:
    inert = {}
    spots = {}
    for t in ts:
        _, A = ctx.mixed(t)
        inert[t] = inertia(A)
        spots[t] = hyp_spot_check(A) if spot else True
    return HypReport(inert, spots)


# -- identities ---------------------------------------------------------------

def cfg_identities(ctx: AtlasContext) -> dict[str, bool]:
    """The three quadratic forms against ``r! P`` at levels ``a+1, a, a-1``."""
    prof = count_profile(ctx.M, ConstraintSpec(ctx.R), bases=ctx.bases or None)
    rf = factorial(prof.r)
    f, g, C = ctx.f, ctx.g, ctx.C_a
    a = ctx.a
    return {
        "ff": bilinear(f, C, f) == rf * prof.P(a + 1),
        "fg": bilinear(f, C, g) == rf * prof.P(a),
        "gg": bilinear(g, C, g) == rf * prof.P(a - 1),
    }


def _battery_preconditions(ctx: AtlasContext) -> None:
    r = ctx.M.rank
    if not 2 <= ctx.a <= r - 1:
        raise PreconditionUnmet("2 <= a <= r-1")
    prof = count_profile(ctx.M, ConstraintSpec(ctx.R), bases=ctx.bases or None)
    if prof.P(ctx.a) == 0:
        raise PreconditionUnmet("P(a) > 0")
    if prof.P(ctx.a - 1) == 0:
        raise PreconditionUnmet("P(a-1) > 0")


def property_battery(ctx: AtlasContext, vectors: int = 8, seed: int = SPOT_SEED) -> dict[str, bool]:
    """Exact checks of inheritance, cyclic invariance, support decrease, pullback
    equality, irreducibility and positivity of ``h`` on the support.

    Everything is scaled by the denominator of ``t`` so the arithmetic stays in
    integers.
    """
    _battery_preconditions(ctx)
    n = ctx.n
    den, Mt = ctx.mixed()
    hden = [ctx.t.numerator if (ctx.R >> x) & 1 else den - ctx.t.numerator for x in range(n)]
    loc = local_matrices(ctx.M, ctx.R, ctx.a, ctx.bases or None)
    sup = members(support(Mt))

    inh = True
    for x in sup:
        Mh = matvec(loc[x], hden)
        if any(Mt[x][y] != Mh[y] for y in range(n)):
            inh = False
            break

    tinv = all(
        loc[x][y][z] == loc[y][z][x] == loc[z][x][y] for x in sup for y in sup for z in sup
    )

    sup_mask = support(Mt)
    dec = all(support(loc[x]) & ~sup_mask == 0 for x in sup)

    rng = random.Random(seed)
    pull = True
    for _ in range(vectors):
        v = [rng.randint(-7, 7) for _ in range(n)]
        lhs = sum(hden[x] * bilinear(v, loc[x], v) for x in sup)
        if lhs != bilinear(v, Mt, v):
            pull = False
            break

    return {
        "Inh": inh,
        "T-Inv": tinv,
        "DecSupp": dec,
        "PullEq": pull,
        "Irr": support_connected(Mt),
        "h-Pos": all(hden[x] > 0 for x in sup),
    }


def kernel_equality_check(ctx: AtlasContext, s: Fraction | None = None) -> tuple[bool, bool]:
    """``(s-equality chain holds, C (f - s g) = 0)`` on ``C_a``; the two should agree."""
    s = ctx.s if s is None else Fraction(s)
    if s is None or s <= 0:
        raise PreconditionUnmet("s > 0")
    f, g, C = ctx.f, ctx.g, ctx.C_a
    ff, gf, gg = bilinear(f, C, f), bilinear(g, C, f), bilinear(g, C, g)
    chain = ff == s * gf == s * s * gg
    z = [s.denominator * fi - s.numerator * gi for fi, gi in zip(f, g)]
    return chain, all(v == 0 for v in matvec(C, z))


# -- lemma-level checks -------------------------------------------------------

def _P(M: BinaryMatroid, R: int):
    return count_profile(M, ConstraintSpec(R)).P


def check_center(M: BinaryMatroid, R: int, a: int) -> bool | None:
    """Positivity after contracting any non-loop; ``None`` when the hypotheses fail."""
    r = M.rank
    P = _P(M, R)
    if not (2 <= a <= r - 1 and P(a) > 0 and P(a - 1) > 0):
        return None
    return all(_P(contract(M, 1 << x), R)(a - 1) > 0 for x in range(M.n) if M.vec(x))


def check_equ_base(M: BinaryMatroid, R: int) -> bool | None:
    """Rank-2 case: the profile chain is geometric iff classes split in one ratio."""
    if M.rank != 2:
        return None
    P = _P(M, R)
    if P(1) == 0:
        return None
    from .equality import parallel_split_constant

    lhs = P(0) > 0 and P(2) > 0 and P(1) * P(1) == P(0) * P(2)
    s_prof = P(2) / P(1) if lhs else None
    s_par = parallel_split_constant(M, R)
    if lhs != (s_par is not None):
        return False
    return s_prof == s_par


def check_transfer(M: BinaryMatroid, R: int, a: int) -> bool | None:
    """Geometric chain at ``a`` iff the same chain one level down in every ``M/x``, ``x`` in ``R``."""
    r = M.rank
    P = _P(M, R)
    if not (r >= 3 and 2 <= a <= r - 1 and P(a) > 0):
        return None
    lhs = P(a + 1) > 0 and P(a - 1) > 0 and P(a) * P(a) == P(a + 1) * P(a - 1)
    s_lhs = P(a + 1) / P(a) if lhs else None
    s_rhs = None
    rhs = True
    for x in members(R):
        if not M.vec(x):
            continue
        Q = _P(contract(M, 1 << x), R)
        if not (Q(a - 2) > 0 and Q(a - 1) > 0 and Q(a - 1) * Q(a - 1) == Q(a) * Q(a - 2)):
            rhs = False
            break
        sx = Q(a) / Q(a - 1)
        if s_rhs is not None and sx != s_rhs:
            rhs = False
            break
        s_rhs = sx
    if lhs != rhs:
        return False
    return not lhs or s_lhs == s_rhs


def rank2_class_matrix(M: BinaryMatroid) -> Matrix:
    """Quotient of ``C(M, R, 1)`` for rank 2: all-ones minus identity on the classes."""
    p = len(parallel_classes(M))
    return tuple(tuple(0 if i == j else 1 for j in range(p)) for i in range(p))
