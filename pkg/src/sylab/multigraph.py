"""Multigraphs with loops and parallel edges, and exact spanning-tree counts.

``tau`` is the matrix-tree theorem evaluated with Bareiss fraction-free
elimination, so counts are exact big integers.  It is the independent oracle
for every tree construction in :mod:`sylab.treesmith`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DegenerateEdge, UnknownEdge


@dataclass(frozen=True)
class Multigraph:
    v: int
    edges: tuple[tuple[int, int, int], ...] = field(default=())
    marked: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(w), int(e)) for u, w, e in self.edges))
        ids = set()
        for u, w, e in self.edges:
            if not (0 <= u < self.v and 0 <= w < self.v):
                raise ValueError(f"edge {e} has an endpoint outside [0, {self.v})")
            if e in ids:
                raise ValueError(f"duplicate edge id {e}")
            ids.add(e)
        if self.marked is not None and self.marked not in ids:
            raise UnknownEdge(self.marked)

    @classmethod
    def from_pairs(cls, v: int, pairs: Sequence[tuple[int, int]], marked: int | None = None) -> "Multigraph":
        return cls(v, tuple((u, w, i) for i, (u, w) in enumerate(pairs)), marked)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge(self, e: int) -> tuple[int, int, int]:
        for t in self.edges:
            if t[2] == e:
                return t
        raise UnknownEdge(e)

    def edge_ids(self) -> list[int]:
        return [e for _, _, e in self.edges]


def bareiss_det(A: list[list[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        rowk = M[k]
        for i in range(k + 1, n):
            rowi = M[i]
            mik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pk - mik * rowk[j]) // prev
            rowi[k] = 0
        prev = pk
    return sign * M[n - 1][n - 1]


def laplacian(G: Multigraph) -> list[list[int]]:
    L = [[0] * G.v for _ in range(G.v)]
    for u, w, _ in G.edges:
        if u == w:
            continue
        L[u][u] += 1
        L[w][w] += 1
        L[u][w] -= 1
        L[w][u] -= 1
    return L


def tau(G: Multigraph) -> int:
    """Number of spanning trees; 0 for a disconnected graph."""
    if G.v <= 1:
        return 1 if G.v == 1 else 0
    L = laplacian(G)
    return bareiss_det([row[:-1] for row in L[:-1]])


def tau_bruteforce(G: Multigraph) -> int:
    """Count spanning trees by checking every (v-1)-subset of non-loop edges."""
    if G.v <= 1:
        return 1 if G.v == 1 else 0
    real = [(u, w) for u, w, _ in G.edges if u != w]
    count = 0
    for subset in combinations(real, G.v - 1):
        parent = list(range(G.v))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ok = True
        for u, w in subset:
            ru, rw = find(u), find(w)
            if ru == rw:
                ok = False
                break
            parent[ru] = rw
        count += ok
    return count


def is_connected(G: Multigraph) -> bool:
    if G.v == 0:
        return False
    adj = [[] for _ in range(G.v)]
    for u, w, _ in G.edges:
        adj[u].append(w)
        adj[w].append(u)
    seen = {0}
    stack = [0]
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return len(seen) == G.v


def delete_edge(G: Multigraph, e: int) -> Multigraph:
    G.edge(e)
    marked = None if G.marked == e else G.marked
    return Multigraph(G.v, tuple(t for t in G.edges if t[2] != e), marked)


def contract_edge(G: Multigraph, e: int) -> Multigraph:
    """Identify the endpoints of ``e`` and drop the loops this creates.

    Loops present before the contraction are kept.  Surviving edges keep ids.
    """
    u, w, _ = G.edge(e)
    if u == w:
        return delete_edge(G, e)
    lo, hi = min(u, w), max(u, w)

    def relabel(a: int) -> int:
        if a == hi:
            return lo
        return a - 1 if a > hi else a

    edges = []
    for a, b, eid in G.edges:
        if eid == e:
            continue
        was_loop = a == b
        a2, b2 = relabel(a), relabel(b)
        if a2 == b2 and not was_loop:
            continue
        edges.append((a2, b2, eid))
    kept = {eid for _, _, eid in edges}
    marked = G.marked if G.marked in kept else None
    return Multigraph(G.v - 1, tuple(edges), marked)


def _reduced_det(L: list[list[int]]) -> int:
    if len(L) <= 1:
        return 1 if len(L) == 1 else 0
    return bareiss_det([row[:-1] for row in L[:-1]])


def tree_ratio(G: Multigraph, e: int) -> Fraction:
    """``tau(G - e) / tau(G / e)`` for an edge that is neither a loop nor a bridge.

    Both counts come from one Laplacian: removing ``e`` adjusts four entries,
    and contracting it merges two rows and columns (the parallel copies of
    ``e`` turn into loops, which the merged diagonal already omits).
    """
    u, w, _ = G.edge(e)
    if u == w:
        raise DegenerateEdge(f"edge {e} is a loop")
    L = laplacian(G)
    Ld = [row[:] for row in L]
    Ld[u][u] -= 1
    Ld[w][w] -= 1
    Ld[u][w] += 1
    Ld[w][u] += 1
    deleted = _reduced_det(Ld)
    if deleted == 0:
        raise DegenerateEdge(f"edge {e} is a bridge (or the graph is disconnected)")
    keep = [i for i in range(G.v) if i != w]
    merged = [[L[i][j] for j in keep] for i in keep]
    iu = keep.index(u)
    for j, jj in enumerate(keep):
        merged[iu][j] += L[w][jj]
        merged[j][iu] += L[jj][w]
    merged[iu][iu] += L[w][w]
    return Fraction(deleted, _reduced_det(merged))


def wedge(G: Multigraph, H: Multigraph, gv: int, hv: int) -> Multigraph:
    """One-point union identifying vertex ``gv`` of G with ``hv`` of H."""
    if not (0 <= gv < G.v and 0 <= hv < H.v):
        raise ValueError("wedge vertex out of range")

    def relabel(a: int) -> int:
        if a == hv:
            return gv
        return G.v + (a - 1 if a > hv else a)

    offset = max((eid for _, _, eid in G.edges), default=-1) + 1
    edges = G.edges + tuple((relabel(a), relabel(b), eid + offset) for a, b, eid in H.edges)
    return Multigraph(G.v + H.v - 1, edges, G.marked)


def simple_euler_bound_ok(G: Multigraph) -> bool:
    """Debug sanity check: the underlying simple graph obeys |E| <= 3|V| - 6."""
    simple = {(min(u, w), max(u, w)) for u, w, _ in G.edges if u != w}
    return G.v < 3 or len(simple) <= 3 * G.v - 6


def cycle(n: int) -> Multigraph:
    """Cycle on ``n`` vertices (``n = 2`` gives two parallel edges, ``n = 1`` a loop)."""
    return Multigraph.from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Multigraph:
    return Multigraph.from_pairs(n, list(combinations(range(n), 2)))


def bundle(k: int) -> Multigraph:
    return Multigraph.from_pairs(2, [(0, 1)] * k)
