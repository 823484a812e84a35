"""Plain-text formats for matroids and multigraphs, plus JSON helpers.

Matroid::

    binary <d> <n>
    <n lines of d bits, most significant coordinate first>
    [labels <name0> ... <name{n-1}>]
    [deleted <i> <j> ...]

Graph::

    graph <V> <E>
    <E lines "u v">
    # tau <decimal>        (written when known, ignored on input)
    # marked <edge id>
    # ids <id0> ... <id{E-1}>   (only when ids are not 0..E-1)

Blank lines and other ``#`` comments are skipped.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .errors import ParseError
from .matroid import BinaryMatroid, mask, members
from .multigraph import Multigraph

INT_SAFE = 2 ** 53


def _lines(text: str) -> list[tuple[int, str]]:
    """Non-blank lines with their 1-based numbers; comments kept for the caller."""
    out = []
    for k, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s:
            out.append((k, s))
    return out


def _int(tok: str, line: int, what: str) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"{what} is not an integer: {tok!r}", line) from None
    if v < 0:
        raise ParseError(f"{what} is negative: {v}", line)
    return v


# -- matroids -----------------------------------------------------------------

def emit_matroid(M: BinaryMatroid) -> str:
    out = [f"binary {M.dim} {M.n}"]
    for c in M.cols:
        out.append(format(c, f"0{M.dim}b") if M.dim else "")
    if M.labels != tuple(f"e{i}" for i in range(M.n)):
        out.append("labels " + " ".join(M.labels))
    if M.deleted:
        out.append("deleted " + " ".join(map(str, members(M.deleted))))
    return "\n".join(out) + "\n"


def parse_matroid(text: str) -> BinaryMatroid:
    lines = [(k, s) for k, s in _lines(text) if not s.startswith("#")]
    if not lines:
        raise ParseError("empty input", 1)
    k0, head = lines[0]
    parts = head.split()
    if len(parts) != 3 or parts[0] != "binary":
        raise ParseError("expected 'binary <d> <n>'", k0)
    d, n = _int(parts[1], k0, "d"), _int(parts[2], k0, "n")
    # a zero-dimensional column is an empty line, which _lines drops
    if d == 0:
        body = lines[1:]
        cols = [0] * n
    else:
        if len(lines) < 1 + n:
            last = lines[-1][0]
            raise ParseError(f"expected {n} columns, found {len(lines) - 1}", last + 1)
        cols = []
        for k, s in lines[1 : 1 + n]:
            if len(s) != d or set(s) - {"0", "1"}:
                raise ParseError(f"expected a bit string of length {d}, got {s!r}", k)
            cols.append(int(s, 2))
        body = lines[1 + n :]
    labels: tuple[str, ...] = ()
    deleted = 0
    for k, s in body:
        tag, _, rest = s.partition(" ")
        toks = rest.split()
        if tag == "labels":
            if len(toks) != n:
                raise ParseError(f"expected {n} labels, got {len(toks)}", k)
            labels = tuple(toks)
        elif tag == "deleted":
            idx = [_int(t, k, "element") for t in toks]
            if any(i >= n for i in idx):
                raise ParseError("deleted element out of range", k)
            deleted = mask(idx)
        else:
            raise ParseError(f"unexpected line {s!r}", k)
    return BinaryMatroid(d, tuple(cols), labels, deleted)


# -- graphs -------------------------------------------------------------------

def emit_graph(G: Multigraph, tau: int | None = None, extra: Iterable[str] = ()) -> str:
    out = [f"graph {G.v} {G.m}"]
    out += [f"{u} {w}" for u, w, _ in G.edges]
    if tau is not None:
        out.append(f"# tau {tau}")
    ids = G.edge_ids()
    if ids != list(range(G.m)):
        out.append("# ids " + " ".join(map(str, ids)))
    if G.marked is not None:
        out.append(f"# marked {G.marked}")
    out += [f"# {e}" for e in extra]
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> Multigraph:
    lines = _lines(text)
    data = [(k, s) for k, s in lines if not s.startswith("#")]
    if not data:
        raise ParseError("empty input", 1)
    k0, head = data[0]
    parts = head.split()
    if len(parts) != 3 or parts[0] != "graph":
        raise ParseError("expected 'graph <V> <E>'", k0)
    V, E = _int(parts[1], k0, "V"), _int(parts[2], k0, "E")
    if len(data) - 1 != E:
        raise ParseError(f"expected {E} edge lines, found {len(data) - 1}", data[-1][0])
    pairs = []
    for k, s in data[1:]:
        toks = s.split()
        if len(toks) != 2:
            raise ParseError("expected 'u v'", k)
        u, w = _int(toks[0], k, "u"), _int(toks[1], k, "v")
        if u >= V or w >= V:
            raise ParseError(f"vertex out of range [0, {V})", k)
        pairs.append((u, w))
    ids = list(range(E))
    marked = None
    for k, s in lines:
        if not s.startswith("#"):
            continue
        toks = s[1:].split()
        if toks[:1] == ["marked"] and len(toks) == 2:
            marked = _int(toks[1], k, "marked edge")
        elif toks[:1] == ["ids"]:
            ids = [_int(t, k, "edge id") for t in toks[1:]]
            if len(ids) != E or len(set(ids)) != E:
                raise ParseError("ids line must list E distinct ids", k)
    edges = tuple((u, w, e) for (u, w), e in zip(pairs, ids))
    if marked is not None and marked not in ids:
        raise ParseError(f"marked edge {marked} does not exist", 1)
    return Multigraph(V, edges, marked)


def read_matroid(path: str | Path) -> BinaryMatroid:
    return parse_matroid(Path(path).read_text())


def read_graph(path: str | Path) -> Multigraph:
    return parse_graph(Path(path).read_text())


def read_any(path: str | Path) -> BinaryMatroid:
    """A matroid file, or a graph file read as its graphic matroid."""
    from .matroid import from_graph

    text = Path(path).read_text()
    for _, s in _lines(text):
        if s.startswith("#"):
            continue
        if s.startswith("graph"):
            return from_graph(parse_graph(text))
        break
    return parse_matroid(text)


# -- JSON ---------------------------------------------------------------------

def jsonable(x: Any) -> Any:
    """Big ints and rationals become strings; containers are converted recursively."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, str):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "value") and isinstance(getattr(x, "value"), str):
        return x.value
    raise TypeError(f"cannot serialize {type(x).__name__}")


def small_ints(x: Any) -> Any:
    """Like :func:`jsonable` but keeps ints below 2^53 as numbers."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x if abs(x) < INT_SAFE else str(x)
    if isinstance(x, dict):
        return {str(k): small_ints(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [small_ints(v) for v in x]
    return jsonable(x)


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def parse_index_list(s: str | None) -> list[int]:
    if s is None or s.strip() == "":
        return []
    return [int(t) for t in s.split(",") if t.strip()]
