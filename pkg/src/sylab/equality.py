"""Equality cases of the unconstrained (k = 0) log-concavity.

The local criterion looks at every independent ``A`` of size ``r - 2`` with
``a - 1`` elements in ``R``; in the rank-2 matroid ``M / A`` every parallel
class must split between ``R`` and its complement in one fixed ratio ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .counting import ConstraintSpec, CountProfile, Verdict, count_profile
from .errors import BadParameters, BadRange
from .matroid import (
    BinaryMatroid,
    contract,
    independent_subsets_of_size,
    loops,
    mask,
    members,
    parallel_classes,
    popcount,
)


@dataclass(frozen=True)
class EqualityVerdict:
    kind: Verdict
    s: Fraction | None = None
    witness: tuple[int, int] | None = None  # (A mask, x)

    def to_json(self) -> dict:
        out: dict = {"verdict": self.kind.value}
        if self.s is not None:
            out["s"] = f"{self.s.numerator}/{self.s.denominator}"
        if self.witness is not None:
            A, x = self.witness
            out["witness"] = {"A": members(A), "x": x}
        return out


def _class_ratio(cls: int, R: int) -> Fraction | None:
    inside = popcount(cls & R)
    outside = popcount(cls & ~R)
    if inside == 0 or outside == 0:
        return None
    return Fraction(inside, outside)


def equality_criterion(M: BinaryMatroid, R: int, a: int, profile: CountProfile | None = None) -> EqualityVerdict:
    """Local equality test at level ``a``.

    One constant ``s`` is shared by every pair ``(A, class)``; it is fixed by the
    first class met in lexicographic order of ``A``.  The witness is the first
    ``(A, x)`` that breaks the condition.
    """
    r = M.rank
    if r < 2 or not 1 <= a <= r - 1:
        raise BadRange(f"a = {a} outside [1, {r - 1}] (rank {r})")
    prof = profile if profile is not None else count_profile(M, ConstraintSpec(R))
    if prof.P(a) == 0:
        return EqualityVerdict(Verdict.VANISHING)

    outside = M.ground & ~R
    s: Fraction | None = None
    for A in _qualifying_sets(M, R, outside, a, r):
        MA = contract(M, A)
        for cls in parallel_classes(MA):
            q = _class_ratio(cls, R)
            if q is None or (s is not None and q != s):
                return EqualityVerdict(Verdict.STRICT, witness=(A, members(cls)[0]))
            s = q
    if s is None:
        raise BadRange("no qualifying independent set")
    return EqualityVerdict(Verdict.EQUAL, s=s)


def _qualifying_sets(M: BinaryMatroid, R: int, outside: int, a: int, r: int):
    """Independent ``A``, ``|A| = r-2``, ``|A & R| = a-1``, in lex order of index tuples."""
    need_in, need_out = a - 1, r - 1 - a
    for A in independent_subsets_of_size(M, r - 2):
        if popcount(A & R) == need_in and popcount(A & outside) == need_out:
            yield A


@dataclass(frozen=True)
class TotalEqualityReport:
    loopless: bool
    rank_ok: bool
    p0_positive: bool
    pr_positive: bool
    i: bool
    ii: bool
    iii: bool
    iv: bool
    s: Fraction | None

    @property
    def preconditions(self) -> bool:
        return self.loopless and self.rank_ok and self.p0_positive and self.pr_positive

    def to_json(self) -> dict:
        return {
            "preconditions": {
                "loopless": self.loopless,
                "rank_at_least_2": self.rank_ok,
                "P0_positive": self.p0_positive,
                "Pr_positive": self.pr_positive,
            },
            "i": self.i,
            "ii": self.ii,
            "iii": self.iii,
            "iv": self.iv,
            "s": None if self.s is None else f"{self.s.numerator}/{self.s.denominator}",
        }


def parallel_split_constant(M: BinaryMatroid, R: int) -> Fraction | None:
    """The ``s`` with ``|Par(x) & R| = s |Par(x) - R|`` for every non-loop, if one exists."""
    s = None
    for cls in parallel_classes(M):
        q = _class_ratio(cls, R)
        if q is None or (s is not None and q != s):
            return None
        s = q
    return s


def total_equality_report(M: BinaryMatroid, R: int, profile: CountProfile | None = None) -> TotalEqualityReport:
    prof = profile if profile is not None else count_profile(M, ConstraintSpec(R))
    r = prof.r
    P = prof.P
    eq = [P(a) * P(a) == P(a + 1) * P(a - 1) for a in range(1, r)]
    i = r >= 1 and P(1) ** r == P(0) ** (r - 1) * P(r)
    s = parallel_split_constant(M, R)
    return TotalEqualityReport(
        loopless=loops(M) == 0,
        rank_ok=r >= 2,
        p0_positive=P(0) > 0,
        pr_positive=P(r) > 0,
        i=bool(i),
        ii=all(eq),
        iii=any(eq),
        iv=s is not None,
        s=s,
    )


def ratio_chain(M: BinaryMatroid, R: int, profile: CountProfile | None = None) -> list[Fraction]:
    """``P(a+1)/P(a)`` over the consecutive levels where both are positive."""
    prof = profile if profile is not None else count_profile(M, ConstraintSpec(R))
    out = []
    for a in range(prof.r):
        if prof.P(a) > 0 and prof.P(a + 1) > 0:
            out.append(prof.P(a + 1) / prof.P(a))
    return out


# -- fixtures -----------------------------------------------------------------

def build_double_matroid(M: BinaryMatroid) -> tuple[BinaryMatroid, int]:
    """Every element duplicated; ``R`` is the original copy.  Over F2, ``-v = v``."""
    if loops(M):
        raise BadParameters("the double construction needs a loopless matroid")
    labels = M.labels + tuple(f"{lab}'" for lab in M.labels)
    D = BinaryMatroid(M.dim, M.cols + M.cols, labels)
    return D, M.ground


def _hyperplane_split(r: int) -> tuple[list[int], list[int]]:
    """Vectors of F2^r with leading coordinate 0 (a hyperplane) and the rest."""
    top = 1 << (r - 1)
    H = [v for v in range(1 << r) if not v & top]
    return H, [v for v in range(1 << r) if v & top]


def build_linear_example(r: int) -> tuple[BinaryMatroid, int]:
    """All of F2^r (zero included), ``R`` the hyperplane with leading coordinate 0."""
    if r < 3:
        raise BadParameters("r >= 3 required")
    H, _ = _hyperplane_split(r)
    cols = tuple(range(1 << r))
    labels = tuple(format(v, f"0{r}b") for v in cols)
    return BinaryMatroid(r, cols, labels), mask(H)


def build_combination_example(r: int, t: int = 1) -> tuple[BinaryMatroid, int]:
    """``R0 + R1 + S0 + S1`` with ``R = R0 + R1``.

    ``R0`` is the hyperplane minus zero, ``S0`` its complement, and ``R1``, ``S1``
    are two copies of the first ``t`` vectors of ``S0``.
    """
    if r < 3:
        raise BadParameters("r >= 3 required")
    H, S0 = _hyperplane_split(r)
    if not 1 <= t <= len(S0):
        raise BadParameters(f"t must lie in [1, {len(S0)}]")
    R0 = [v for v in H if v]
    dup = S0[:t]
    cols = R0 + dup + S0 + dup
    tags = ["R0"] * len(R0) + ["R1"] * t + ["S0"] * len(S0) + ["S1"] * t
    labels = tuple(f"{tag}:{format(v, f'0{r}b')}" for tag, v in zip(tags, cols))
    R = mask(range(len(R0) + t))
    return BinaryMatroid(r, tuple(cols), labels), R
