"""Constrained basis counts, normalized profiles and log-concavity verdicts.

Everything here is filtered enumeration with big integers and ``Fraction``;
this module is the reference oracle the rest of the package is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb, factorial, prod
from typing import Iterable, Sequence

from .errors import BadParameters, BadRange, InvariantViolation, LoopArgument, OverlappingConstraints
from .matroid import (
    BinaryMatroid,
    contract,
    count_bases,
    delete,
    direct_sum,
    enumerate_bases,
    free_matroid,
    greedy_basis,
    iter_independent,
    members,
    popcount,
)


class Verdict(str, Enum):
    STRICT = "strict"
    EQUAL = "equal"
    VANISHING = "vanishing"


@dataclass(frozen=True)
class ConstraintSpec:
    """Slicing data: the set ``R`` plus blocks ``S`` with prescribed sizes ``c``."""

    R: int
    S: tuple[int, ...] = ()
    c: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "S", tuple(self.S))
        object.__setattr__(self, "c", tuple(self.c))
        if len(self.S) != len(self.c):
            raise ValueError("S and c differ in length")
        if any(ci < 0 for ci in self.c):
            raise ValueError("negative block count")
        seen = self.R
        for s in self.S:
            if seen & s:
                raise OverlappingConstraints("R, S_1, ..., S_k must be pairwise disjoint")
            seen |= s

    @property
    def k(self) -> int:
        return len(self.S)

    @property
    def csum(self) -> int:
        return sum(self.c)

    def padded(self, k: int) -> "ConstraintSpec":
        extra = k - self.k
        if extra < 0:
            raise ValueError("cannot pad to a smaller arity")
        return ConstraintSpec(self.R, self.S + (0,) * extra, self.c + (0,) * extra)


@dataclass(frozen=True)
class CountProfile:
    counts: dict[int, int]
    normalized: dict[int, Fraction]
    mode: str
    r: int
    m: int | None = None
    spec: ConstraintSpec | None = field(default=None, compare=False)

    def B(self, a: int) -> int:
        return self.counts.get(a, 0)

    def P(self, a: int) -> Fraction:
        return self.normalized.get(a, Fraction(0))


def multinomial(total: int, parts: Sequence[int]) -> int:
    """``total! / prod(parts!)``; zero if a part is negative or the parts do not sum up."""
    if any(p < 0 for p in parts) or sum(parts) != total:
        return 0
    return factorial(total) // prod(factorial(p) for p in parts)


def _check_mode(mode: str) -> None:
    if mode not in ("bases", "independent"):
        raise ValueError(f"unknown mode {mode!r}")


def tally(sets: Iterable[int], R: int, S: Sequence[int], c: Sequence[int], top: int) -> dict[int, int]:
    """Histogram of ``|A & R|`` over the sets that meet every block in its count."""
    counts = {a: 0 for a in range(top + 1)}
    for A in sets:
        ok = True
        for s, ci in zip(S, c):
            if popcount(A & s) != ci:
                ok = False
                break
        if ok:
            counts[popcount(A & R)] += 1
    return counts


def count_profile(
    M: BinaryMatroid,
    spec: ConstraintSpec,
    mode: str = "bases",
    *,
    bases: Sequence[int] | None = None,
    independents: Sequence[int] | None = None,
) -> CountProfile:
    """Exact counts for every level ``a = 0..r``.

    ``bases`` / ``independents`` may carry precomputed set lists of ``M`` (suites
    reuse them across many specs).  In ``independent`` mode ``R`` is replaced by the complement of
    the blocks and the normalization divides by ``C(m, a)``.
    """
    _check_mode(mode)
    r = M.rank
    if mode == "bases":
        sets = enumerate_bases(M) if bases is None else bases
        counts = tally(sets, spec.R, spec.S, spec.c, r)
        normalized = {}
        for a, b in counts.items():
            w = multinomial(r, (a, *spec.c, r - a - spec.csum))
            normalized[a] = Fraction(b, w) if w else Fraction(0)
            if b and not w:
                raise InvariantViolation(f"nonzero count at a={a} with zero multinomial")
        return CountProfile(counts, normalized, mode, r, None, spec)

    union = 0
    for s in spec.S:
        union |= s
    R = M.ground & ~union
    m = M.n - spec.csum
    counts = tally(iter_independent(M) if independents is None else independents, R, spec.S, spec.c, r)
    normalized = {a: (Fraction(b, comb(m, a)) if 0 <= a <= m and comb(m, a) else Fraction(0)) for a, b in counts.items()}
    return CountProfile(counts, normalized, mode, r, m, ConstraintSpec(R, spec.S, spec.c))


def _compare(lhs: Fraction, rhs: Fraction, center: Fraction, what: str) -> Verdict:
    if center == 0:
        return Verdict.VANISHING
    if lhs > rhs:
        return Verdict.STRICT
    if lhs == rhs:
        return Verdict.EQUAL
    raise InvariantViolation(f"{what}: {lhs} < {rhs}")


def sy_verdict_from_profile(prof: CountProfile, a: int) -> Verdict:
    if not 1 <= a <= prof.r - 1:
        raise BadRange(f"a = {a} outside [1, {prof.r - 1}]")
    p = prof.P(a)
    return _compare(p * p, prof.P(a + 1) * prof.P(a - 1), p, f"log-concavity fails at a={a}")


def sy_verdict(M: BinaryMatroid, spec: ConstraintSpec, a: int) -> Verdict:
    """Compare ``P(a)^2`` with ``P(a+1) P(a-1)`` exactly.

    A genuine violation raises :class:`InvariantViolation`.
    """
    r = M.rank
    if not 1 <= a <= r - 1:
        raise BadRange(f"a = {a} outside [1, {r - 1}]")
    return sy_verdict_from_profile(count_profile(M, spec), a)


def mason_verdict_from_profile(prof: CountProfile, a: int) -> Verdict:
    m = prof.m
    if m is None:
        raise ValueError("profile was not computed in independent mode")
    if not 1 <= a <= min(prof.r - 1, m - 1):
        raise BadRange(f"a = {a} outside [1, {min(prof.r - 1, m - 1)}]")
    i0, ip, im = prof.B(a), prof.B(a + 1), prof.B(a - 1)
    factor = (1 + Fraction(1, a)) * (1 + Fraction(1, m - a))
    return _compare(Fraction(i0 * i0), factor * ip * im, Fraction(i0), f"ultra-log-concavity fails at a={a}")


def gen_mason_verdict(M: BinaryMatroid, spec: ConstraintSpec, a: int) -> Verdict:
    """Verdict on ``I(a)^2 >= (1+1/a)(1+1/(m-a)) I(a+1) I(a-1)``; ``spec.R`` is ignored."""
    return mason_verdict_from_profile(count_profile(M, spec, "independent"), a)


# -- deletion/contraction ratios ----------------------------------------------

def bases_avoiding(M: BinaryMatroid, x: int) -> int:
    """``B(M - x)``: bases of ``M`` that do not use ``x``.

    When ``x`` is a coloop this is 0, which keeps ``B(M) = B(M-x) + B(M/x)``.
    """
    D = delete(M, 1 << x)
    if D.rank < M.rank:
        return 0
    return count_bases(D)


def basis_ratio(M: BinaryMatroid, x: int) -> Fraction:
    """``B(M - x) / B(M / x)`` for a non-loop ``x``; checked against the bound ``n``."""
    if M.vec(x) == 0:
        raise LoopArgument(f"element {x} is a loop")
    rho = Fraction(bases_avoiding(M, x), count_bases(contract(M, 1 << x)))
    if rho > M.n:
        raise InvariantViolation(f"ratio {rho} exceeds n = {M.n}")
    return rho


def count_via_ratio_product(M: BinaryMatroid) -> int:
    """``B(M)`` as a telescoping product of ``1 + rho`` along a greedy basis."""
    total = Fraction(1)
    cur = M
    for x in members(greedy_basis(M)):
        total *= 1 + basis_ratio(cur, x)
        cur = contract(cur, 1 << x)
    if total.denominator != 1:
        raise InvariantViolation(f"ratio product {total} is not an integer")
    return total.numerator


# -- the free-matroid substitution --------------------------------------------

def truncated_sum_counts(M: BinaryMatroid, spec: ConstraintSpec) -> tuple[int, dict[int, int]]:
    """Counts over ``m``-element independent sets of ``M + F_m`` (free part appended).

    Returns ``(m, counts)`` where ``counts[a]`` filters by the blocks of ``spec``
    and by ``|A & R| = a`` with ``R`` the complement of the blocks inside ``M``.
    These are the bases of the rank-``m`` truncation of the direct sum, and
    ``counts[a] = I(a) * C(m, a + sum(c))``.
    """
    m = M.n - spec.csum
    if m < 0:
        raise BadParameters("block counts exceed the ground set")
    union = 0
    for s in spec.S:
        union |= s
    R = M.ground & ~union
    D = direct_sum(M, free_matroid(m))
    top = min(m, M.rank)
    counts = tally(iter_independent(D, m), R, spec.S, spec.c, max(top, 0))
    return m, counts


def ratio_bound_ok(M: BinaryMatroid) -> bool:
    return all(basis_ratio(M, x) <= M.n for x in range(M.n) if M.vec(x))


__all__ = [
    "Verdict",
    "ConstraintSpec",
    "CountProfile",
    "multinomial",
    "tally",
    "count_profile",
    "sy_verdict",
    "sy_verdict_from_profile",
    "gen_mason_verdict",
    "mason_verdict_from_profile",
    "bases_avoiding",
    "basis_ratio",
    "count_via_ratio_product",
    "truncated_sum_counts",
]
