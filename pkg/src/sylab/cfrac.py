"""Continued fractions, quotient sums and the search for a good splitting ``m``."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BadParameters, NoCandidate, ZeroDenominator

NTD_SEED = 7919
DEFAULT_BUDGET = 2000


@dataclass(frozen=True)
class CFExpansion:
    quotients: tuple[int, ...]
    value: Fraction

    @property
    def qsum(self) -> int:
        return sum(self.quotients)

    def __str__(self) -> str:
        q = self.quotients
        if len(q) == 1:
            return f"[{q[0]}]"
        return f"[{q[0]}; " + ", ".join(map(str, q[1:])) + "]"


def cf_expand(p: int, q: int) -> CFExpansion:
    """Euclid's algorithm; the last quotient is at least 2 unless the value is an integer."""
    if q == 0:
        raise ZeroDenominator("denominator is zero")
    if p < 0 or q < 0:
        raise BadParameters("expected nonnegative numerator and positive denominator")
    out = []
    a, b = p, q
    while b:
        t, rem = divmod(a, b)
        out.append(t)
        a, b = b, rem
    return CFExpansion(tuple(out), Fraction(p, q))


def evaluate(quotients: Sequence[int]) -> Fraction:
    if not quotients:
        raise BadParameters("empty quotient list")
    val = Fraction(quotients[-1])
    for a in reversed(quotients[:-1]):
        val = a + 1 / val
    return val


def convergents(quotients: Sequence[int]) -> list[Fraction]:
    h0, h1 = 1, quotients[0]
    k0, k1 = 0, 1
    out = [Fraction(h1, k1)]
    for a in quotients[1:]:
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        out.append(Fraction(h1, k1))
    return out


def quotient_sum(p: int, q: int, cap: int | None = None) -> int:
    """Sum of all quotients of ``p/q`` (a leading zero quotient adds nothing).

    With ``cap`` the loop stops once the running sum passes it and returns the
    partial sum, which is then known to exceed ``cap``.
    """
    if q == 0:
        raise ZeroDenominator("denominator is zero")
    total = 0
    a, b = p, q
    while b:
        t, rem = divmod(a, b)
        total += t
        if cap is not None and total > cap:
            return total
        a, b = b, rem
    return total


def _ntd_cost(A: int, B: int, m: int, cap: int | None) -> int:
    c1 = quotient_sum(m, A, cap)
    if cap is not None and c1 > cap:
        return c1
    return max(c1, quotient_sum(B - m, A, cap))


def ntd_search(A: int, B: int, budget: int = DEFAULT_BUDGET, seed: int = NTD_SEED) -> int:
    """``m`` in ``[1, B-1]`` minimizing ``max(s(m/A), s((B-m)/A))``, ties to smaller ``m``.

    Exhaustive when ``B - 1 <= budget``; otherwise a fixed-seed sample of
    ``budget`` candidates is scanned.
    """
    if B <= 1:
        raise NoCandidate("B = 1 leaves no m in [1, B-1]")
    if not B <= A <= 2 * B:
        raise BadParameters("expected B <= A <= 2B")
    if B - 1 <= budget:
        candidates = range(1, B)
    else:
        rng = random.Random(seed ^ (A * 1_000_003 + B))
        candidates = sorted(set(rng.sample(range(1, B), budget)))
    best_m, best = None, None
    for m in candidates:
        c = _ntd_cost(A, B, m, best)
        if best is None or c < best:
            best, best_m = c, m
    return best_m


def ntd_quality(A: int, value: int) -> float | None:
    """Achieved value over ``log A (log log A)^2``; ``None`` where that is not positive."""
    if A < 16:
        return None
    return value / (math.log(A) * math.log(math.log(A)) ** 2)


def tree_quality(N: int, edges: int) -> float | None:
    """Edges over ``ln N ln ln N``."""
    if N < 16:
        return None
    return edges / (math.log(N) * math.log(math.log(N)))
