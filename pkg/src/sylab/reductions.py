"""Instance transformers from coincidence questions to log-concavity equality.

Each constructor also has a ``*_identities`` companion that recomputes both
sides of the defining counting identities by enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .counting import ConstraintSpec, CountProfile, Verdict, bases_avoiding, count_profile, sy_verdict_from_profile
from .errors import InvariantViolation, LoopArgument, ParallelPair
from .matroid import BinaryMatroid, contract, count_bases, direct_sum, mask


@dataclass(frozen=True)
class SYInstance:
    M: BinaryMatroid
    R: int
    a: int
    S: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def spec(self) -> ConstraintSpec:
        return ConstraintSpec(self.R, self.S, self.c)

    @property
    def k(self) -> int:
        return len(self.S)

    def profile(self) -> CountProfile:
        return count_profile(self.M, self.spec)

    def verdict(self) -> Verdict:
        return sy_verdict_from_profile(self.profile(), self.a)

    def to_json(self) -> dict:
        from .matroid import members

        return {
            "R": members(self.R),
            "a": self.a,
            "S": [members(s) for s in self.S],
            "c": list(self.c),
        }


def _nonloop(M: BinaryMatroid, x: int, name: str) -> None:
    if not 0 <= x < M.n:
        raise LoopArgument(f"{name} = {x} is not an element")
    if M.vec(x) == 0:
        raise LoopArgument(f"{name} = {x} is a loop")


def cdc_instance(M: BinaryMatroid, x: int, y: int) -> SYInstance:
    """Append a zero coordinate to every column and add two copies ``u, v`` of the new unit vector.

    ``R = {x, u}``, ``a = 1``, one block ``S = X - {x, y}`` with ``c = r - 1``.
    """
    _nonloop(M, x, "x")
    _nonloop(M, y, "y")
    if x == y or M.vec(x) == M.vec(y):
        raise ParallelPair(f"{x} and {y} are parallel")
    n = M.n
    cols = tuple(c << 1 for c in M.cols) + (1, 1)
    Mp = BinaryMatroid(M.dim + 1, cols, M.labels + ("u", "v"), M.deleted)
    u = n
    R = mask([x, u])
    S = M.ground & ~mask([x, y])
    return SYInstance(Mp, R, 1, (S,), (M.rank - 1,))


def contracted_avoiding(M: BinaryMatroid, x: int, y: int) -> int:
    """``B(M/x - y)``: bases of ``M`` that contain ``x`` and avoid ``y``."""
    return bases_avoiding(contract(M, 1 << x), y)


@dataclass(frozen=True)
class CDCCheck:
    b_xy: int
    b_yx: int
    counts: tuple[int, int, int]
    verdict: Verdict
    gap: Fraction

    @property
    def coincide(self) -> bool:
        return self.b_xy == self.b_yx


def cdc_identities(M: BinaryMatroid, x: int, y: int) -> CDCCheck:
    """Build the instance and check every identity; raise on any mismatch."""
    inst = cdc_instance(M, x, y)
    r = M.rank
    if inst.M.rank != r + 1:
        raise InvariantViolation("rank of the extended matroid is not r + 1")
    prof = inst.profile()
    b_xy = contracted_avoiding(M, x, y)
    b_yx = contracted_avoiding(M, y, x)
    b0, b1, b2 = prof.B(0), prof.B(1), prof.B(2)
    if (b2, b0, b1) != (b_xy, b_yx, b_xy + b_yx):
        raise InvariantViolation(f"count identities fail: {(b0, b1, b2)} vs {(b_yx, b_xy + b_yx, b_xy)}")
    P = prof.P
    gap = P(1) * P(1) - P(2) * P(0)
    if gap != Fraction((b_xy - b_yx) ** 2, r * r * (r + 1) ** 2):
        raise InvariantViolation("square identity fails")
    verdict = sy_verdict_from_profile(prof, 1) if r >= 1 else Verdict.VANISHING
    return CDCCheck(b_xy, b_yx, (b0, b1, b2), verdict, gap)


def cdcr_to_cdc(M: BinaryMatroid, x: int, N: BinaryMatroid, y: int) -> tuple[BinaryMatroid, int, int]:
    """``(M + N, x, y')`` where ``y'`` is ``y`` shifted past the elements of ``M``."""
    _nonloop(M, x, "x")
    _nonloop(N, y, "y")
    return direct_sum(M, N), x, M.n + y


def cdcr_identities(M: BinaryMatroid, x: int, N: BinaryMatroid, y: int) -> bool:
    """Check both product identities; return whether the two ratios coincide."""
    D, xs, ys = cdcr_to_cdc(M, x, N, y)
    lhs1 = contracted_avoiding(D, xs, ys)
    lhs2 = contracted_avoiding(D, ys, xs)
    Mx, Ny = count_bases(contract(M, 1 << x)), count_bases(contract(N, 1 << y))
    Mdel, Ndel = bases_avoiding(M, x), bases_avoiding(N, y)
    if lhs1 != Mx * Ndel or lhs2 != Mdel * Ny:
        raise InvariantViolation("product identities fail")
    return Fraction(Mdel, Mx) == Fraction(Ndel, Ny)


def pad_k(inst: SYInstance, k: int) -> SYInstance:
    """Append empty blocks with zero counts; normalized values must not move."""
    extra = k - inst.k
    if extra < 0:
        raise ValueError("target arity is below the current one")
    if extra == 0:
        return inst
    out = SYInstance(inst.M, inst.R, inst.a, inst.S + (0,) * extra, inst.c + (0,) * extra)
    before, after = inst.profile(), out.profile()
    if before.normalized != after.normalized or before.counts != after.counts:
        raise InvariantViolation("padding changed the profile")
    return out
