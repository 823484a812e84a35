"""Series-parallel terms with exact tree counts, and graphs with prescribed counts.

A term describes a two-terminal network ``N``.  ``T`` counts spanning trees of
``N`` and ``F`` counts spanning forests with two components separating the
terminals.  Closing ``N`` with a marked edge ``e`` between the terminals gives
a graph ``G`` with ``tau(G - e) = T`` and ``tau(G / e) = F``.

Swapping series and parallel composition swaps ``T`` and ``F``; on these
networks this is planar duality, so no embedding is ever computed.

``k`` parallel edges (a bundle) and ``k`` edges in series (a path) are single
nodes, so large integer parts cost nothing.  Terms can still be deep (an
expansion with many quotients nests one level per quotient), so every
traversal below is iterative.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Sequence

from .cfrac import DEFAULT_BUDGET, cf_expand, ntd_search, quotient_sum
from .errors import BadQuotient, DegenerateRatio
from .multigraph import Multigraph, wedge

LEAF, SER, PAR, BUNDLE, PATH = "leaf", "ser", "par", "bundle", "path"
ATOMS = (LEAF, BUNDLE, PATH)


@dataclass(frozen=True, eq=False)
class SPTerm:
    kind: str
    left: "SPTerm | None" = field(default=None, repr=False)
    right: "SPTerm | None" = field(default=None, repr=False)
    T: int = 1
    F: int = 1
    leaves: int = 1
    k: int = 1

    def __repr__(self):
        return f"SPTerm({self.kind}, T={self.T}, F={self.F}, leaves={self.leaves})"

    @property
    def ratio(self):
        from fractions import Fraction

        return Fraction(self.T, self.F)

    def postorder(self) -> Iterator["SPTerm"]:
        """Every node after its children; shared subterms are visited once."""
        seen: set[int] = set()
        stack: list[tuple[SPTerm, bool]] = [(self, False)]
        while stack:
            node, done = stack.pop()
            if done:
                yield node
                continue
            if id(node) in seen:
                continue
            seen.add(id(node))
            stack.append((node, True))
            if node.kind not in ATOMS:
                stack.append((node.right, False))
                stack.append((node.left, False))

    def signature(self) -> tuple:
        """Structural encoding, used for equality checks in tests."""
        codes: dict[int, int] = {}
        table = []
        for node in self.postorder():
            if node.kind == LEAF:
                entry = (LEAF,)
            elif node.kind in ATOMS:
                entry = (node.kind, node.k)
            else:
                entry = (node.kind, codes[id(node.left)], codes[id(node.right)])
            codes[id(node)] = len(table)
            table.append(entry)
        return tuple(table)


LEAF_TERM = SPTerm(LEAF)


def leaf() -> SPTerm:
    return LEAF_TERM


def ser(a: SPTerm, b: SPTerm) -> SPTerm:
    return SPTerm(SER, a, b, a.T * b.T, a.F * b.T + a.T * b.F, a.leaves + b.leaves)


def par(a: SPTerm, b: SPTerm) -> SPTerm:
    return SPTerm(PAR, a, b, a.T * b.F + a.F * b.T, a.F * b.F, a.leaves + b.leaves)


def dualize(t: SPTerm) -> SPTerm:
    """Swap series and parallel everywhere; ``(T, F)`` becomes ``(F, T)``."""
    image: dict[int, SPTerm] = {}
    for node in t.postorder():
        if node.kind == LEAF:
            image[id(node)] = node
        elif node.kind == BUNDLE:
            image[id(node)] = path_term(node.k)
        elif node.kind == PATH:
            image[id(node)] = bundle_term(node.k)
        else:
            l, r = image[id(node.left)], image[id(node.right)]
            image[id(node)] = par(l, r) if node.kind == SER else ser(l, r)
    return image[id(t)]


def par_extend(t: SPTerm) -> SPTerm:
    """Add one edge parallel to the marked edge: ratio ``x -> 1 + x``."""
    return par(LEAF_TERM, t)


def bundle_term(k: int) -> SPTerm:
    """``k`` parallel edges: ratio ``k``."""
    if k < 1:
        raise BadQuotient("a bundle needs at least one edge")
    return LEAF_TERM if k == 1 else SPTerm(BUNDLE, T=k, F=1, leaves=k, k=k)


def path_term(k: int) -> SPTerm:
    """``k`` edges in series: ratio ``1/k``."""
    if k < 1:
        raise BadQuotient("a path needs at least one edge")
    return LEAF_TERM if k == 1 else SPTerm(PATH, T=1, F=k, leaves=k, k=k)


def par_extend_by(t: SPTerm, q: int) -> SPTerm:
    """``q`` applications of :func:`par_extend` in one node."""
    return t if q == 0 else par(bundle_term(q), t)


def from_cf(quotients: Sequence[int]) -> SPTerm:
    """Term with ``T/F`` equal to ``[a0; a1, ..., as]`` and ``sum(a_i)`` leaves."""
    q = list(quotients)
    if not q:
        raise BadQuotient("empty quotient list")
    if any(a < 1 for a in q):
        raise BadQuotient("all quotients must be at least 1")
    # carry the dual along so no step re-walks the term
    t, d = bundle_term(q[-1]), path_term(q[-1])
    for a in reversed(q[:-1]):
        t, d = par_extend_by(d, a), ser(path_term(a), t)
    return t


def sum_terms(t1: SPTerm, t2: SPTerm) -> SPTerm:
    """Ratios add: identify the marked edges of both graphs."""
    return par(t1, t2)


def realize(t: SPTerm, with_marked: bool = True) -> Multigraph:
    """Graph of the network between terminals 0 and 1.

    Edge ids follow a left-first walk; the marked edge, when present, gets the
    last id ``t.leaves``.
    """
    edges: list[tuple[int, int, int]] = []
    nv = 2
    stack: list[tuple[SPTerm, int, int]] = [(t, 0, 1)]
    while stack:
        node, s, e = stack.pop()
        if node.kind == LEAF:
            edges.append((s, e, len(edges)))
        elif node.kind == BUNDLE:
            base = len(edges)
            edges += [(s, e, base + i) for i in range(node.k)]
        elif node.kind == PATH:
            chain = [s] + list(range(nv, nv + node.k - 1)) + [e]
            nv += node.k - 1
            base = len(edges)
            edges += [(chain[i], chain[i + 1], base + i) for i in range(node.k)]
        elif node.kind == SER:
            mid = nv
            nv += 1
            stack.append((node.right, mid, e))
            stack.append((node.left, s, mid))
        else:
            stack.append((node.right, s, e))
            stack.append((node.left, s, e))
    marked = None
    if with_marked:
        marked = len(edges)
        edges.append((0, 1, marked))
    return Multigraph(nv, tuple(edges), marked)


def random_term(rng: random.Random, max_leaves: int) -> SPTerm:
    """Uniform-ish random binary term with between 1 and ``max_leaves`` leaves."""
    n = rng.randint(1, max_leaves)
    pool = [LEAF_TERM] * n
    while len(pool) > 1:
        i = rng.randrange(len(pool))
        a = pool.pop(i)
        j = rng.randrange(len(pool))
        b = pool.pop(j)
        pool.append(ser(a, b) if rng.random() < 0.5 else par(a, b))
    return pool[0]


# -- graphs with a prescribed number of spanning trees -------------------------

EXHAUSTIVE_LIMIT = 100_000
SAMPLE_SIZE = 20_000
SAMPLE_SEED = 104729
GOLDEN = (1 + 5 ** 0.5) / 2


def best_denominator(N: int) -> int:
    """``d`` coprime to ``N`` with the smallest quotient sum of ``N/d``.

    Every ``d < N`` is scanned up to ``EXHAUSTIVE_LIMIT``; above it a seeded
    sample is used, padded with values near ``N/phi`` and ``N/phi^2`` whose
    expansions tend to have small quotients.
    """
    if N <= 2:
        return 1
    if N <= EXHAUSTIVE_LIMIT:
        candidates: Sequence[int] = range(1, N)
    else:
        rng = random.Random(SAMPLE_SEED ^ N)
        pool = set(rng.randrange(1, N) for _ in range(SAMPLE_SIZE))
        for centre in (round(N / GOLDEN), round(N / GOLDEN ** 2)):
            for k in range(-200, 201):
                if 1 <= centre + k < N:
                    pool.add(centre + k)
        candidates = sorted(pool)
    best_d, best = 1, N
    for d in candidates:
        if gcd(N, d) != 1:
            continue
        s = quotient_sum(N, d, best)
        if s < best:
            best, best_d = s, d
    return best_d


@dataclass(frozen=True)
class TreeConstruction:
    graph: Multigraph
    N: int
    d: int | None
    quotients: tuple[int, ...]

    @property
    def edges(self) -> int:
        return self.graph.m


def exact_tree_graph(N: int) -> TreeConstruction:
    """Series-parallel graph with exactly ``N`` spanning trees.

    The term from the expansion of ``N/d`` has ``T = N`` because numerator and
    denominator stay coprime; dropping the marked edge leaves a graph counted by
    ``T``.
    """
    if N < 1:
        raise DegenerateRatio("N must be positive")
    if N == 1:
        return TreeConstruction(Multigraph(1), 1, None, ())
    if N == 2:
        return TreeConstruction(Multigraph.from_pairs(2, [(0, 1), (0, 1)]), 2, 1, (2,))
    d = best_denominator(N)
    q = cf_expand(N, d).quotients
    term = from_cf(q)
    return TreeConstruction(realize(term, with_marked=False), N, d, q)


def exact_tree_graph_factored(N: int) -> Multigraph:
    """One graph per prime power factor, glued at a vertex."""
    from sympy import factorint

    if N < 1:
        raise DegenerateRatio("N must be positive")
    G = Multigraph(1)
    for p, e in sorted(factorint(N).items()):
        piece = exact_tree_graph(p).graph
        for _ in range(e):
            G = wedge(G, piece, 0, 0)
    return G


# -- graphs with a prescribed spanning tree ratio ------------------------------

@dataclass(frozen=True)
class RatioConstruction:
    graph: Multigraph
    edge: int
    term: SPTerm
    A: int
    B: int
    m: int | None
    reported_edges: int

    def __iter__(self):
        yield self.graph
        yield self.edge


def _ratio_term(A: int, B: int, budget: int) -> tuple[SPTerm, int | None, int]:
    """Term with ``T/F = A/B`` (coprime) plus the chosen ``m`` and the edge formula."""
    if B == 1:
        return bundle_term(A), None, A + 1
    if A < B:
        t, m, e = _ratio_term(B, A, budget)
        return dualize(t), m, e
    q, rem = divmod(A, B)
    Ap = B + rem
    m = ntd_search(Ap, B, budget)
    left = dualize(from_cf(cf_expand(Ap, m).quotients))
    right = dualize(from_cf(cf_expand(Ap, B - m).quotients))
    t = par_extend_by(dualize(sum_terms(left, right)), q - 1)
    edges = 1 + quotient_sum(m, Ap) + quotient_sum(B - m, Ap) + max(0, q - 1)
    return t, m, edges


def ratio_graph(A: int, B: int, budget: int = DEFAULT_BUDGET) -> RatioConstruction:
    """Graph and edge ``e`` with ``tau(G-e)/tau(G/e) = A/B``."""
    if A < 1 or B < 1:
        raise DegenerateRatio("A and B must be positive")
    g = gcd(A, B)
    A, B = A // g, B // g
    t, m, edges = _ratio_term(A, B, budget)
    G = realize(t, with_marked=True)
    return RatioConstruction(G, G.marked, t, A, B, m, edges)
