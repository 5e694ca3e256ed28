"""Text and JSON documents for maps, posets and realizers.

Map documents::

    n <vertex_count> m <edge_count>
    e <u> <v>                  # m lines
    r <v>: <dart> <dart> ...   # n lines, counterclockwise
    outer <dart>

The JSON mirror uses the same field names: ``{"n", "m", "e", "r", "outer"}``.
"""
from __future__ import annotations

import json

from .planar_map import MapError, PlanarMap
from .poset import Poset, PosetError


class FormatError(ValueError):
    """Malformed document."""


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"line {no}: expected an integer, got {tok!r}") from None


def parse_map(text: str) -> PlanarMap:
    """Parse a map document (text or JSON); validates the embedding."""
    if text.lstrip().startswith("{"):
        return map_from_json(text)
    lines = list(_lines(text))
    if not lines:
        raise FormatError("empty map document")
    no, head = lines[0]
    tok = head.split()
    if len(tok) != 4 or tok[0] != "n" or tok[2] != "m":
        raise FormatError(f"line {no}: expected 'n <count> m <count>'")
    n, m = _int(tok[1], no), _int(tok[3], no)
    if n < 0 or m < 0:
        raise FormatError(f"line {no}: counts must be nonnegative")
    body = lines[1:]
    if len(body) != m + n + 1:
        raise FormatError(f"expected {m} edge lines, {n} rotation lines and an outer line; "
                          f"got {len(body)} lines")
    edges = []
    for no, line in body[:m]:
        tok = line.split()
        if len(tok) != 3 or tok[0] != "e":
            raise FormatError(f"line {no}: expected 'e <u> <v>'")
        edges.append((_int(tok[1], no), _int(tok[2], no)))
    rots: list[list[int] | None] = [None] * n
    for no, line in body[m:m + n]:
        if not line.startswith("r ") or ":" not in line:
            raise FormatError(f"line {no}: expected 'r <v>: <darts>'")
        left, right = line[2:].split(":", 1)
        v = _int(left.strip(), no)
        if not 0 <= v < n:
            raise FormatError(f"line {no}: vertex {v} out of range")
        if rots[v] is not None:
            raise FormatError(f"line {no}: second rotation for vertex {v}")
        rots[v] = [_int(t, no) for t in right.split()]
    no, line = body[-1]
    tok = line.split()
    if len(tok) != 2 or tok[0] != "outer":
        raise FormatError(f"line {no}: expected 'outer <dart>'")
    outer = _int(tok[1], no)
    return _make(n, edges, rots, outer)


def _make(n, edges, rots, outer) -> PlanarMap:
    missing = [v for v, r in enumerate(rots) if r is None]
    if missing:
        raise FormatError(f"no rotation for vertex {missing[0]}")
    if edges and not 0 <= outer < 2 * len(edges):
        raise MapError(f"outer dart {outer} out of range")
    return PlanarMap(n, tuple(map(tuple, edges)), tuple(map(tuple, rots)), outer if edges else 0)


def map_from_json(text: str) -> PlanarMap:
    try:
        doc = json.loads(text)
        n, m = int(doc["n"]), int(doc["m"])
        edges = [tuple(int(x) for x in e) for e in doc["e"]]
        rots = [[int(d) for d in r] for r in doc["r"]]
        outer = int(doc["outer"])
    except (ValueError, KeyError, TypeError) as exc:
        raise FormatError(f"bad JSON map document: {exc}") from None
    if len(edges) != m or len(rots) != n or any(len(e) != 2 for e in edges):
        raise FormatError("JSON map counts do not match its lists")
    return _make(n, edges, rots, outer)


def format_map(M: PlanarMap, comment: str = "") -> str:
    out = [f"# {line}" for line in comment.splitlines()]
    out.append(f"n {M.vertex_count} m {M.edge_count}")
    out += [f"e {u} {v}" for u, v in M.edges]
    out += [f"r {v}: " + " ".join(map(str, rot)) for v, rot in enumerate(M.rotations)]
    out.append(f"outer {M.outer}")
    return "\n".join(out) + "\n"


def map_to_json(M: PlanarMap) -> str:
    return json.dumps({"n": M.vertex_count, "m": M.edge_count,
                       "e": [list(e) for e in M.edges],
                       "r": [list(r) for r in M.rotations], "outer": M.outer})


# -- posets and realizers --------------------------------------------------------------


def parse_poset(text: str) -> Poset:
    labels, rel = [], []
    for no, line in _lines(text):
        tok = line.split()
        if tok[0] == "elem" and len(tok) == 2:
            labels.append(tok[1])
        elif tok[0] == "lt" and len(tok) == 3:
            rel.append((tok[1], tok[2]))
        else:
            raise FormatError(f"line {no}: expected 'elem <label>' or 'lt <a> <b>'")
    try:
        return Poset(labels, rel)
    except PosetError as exc:
        raise FormatError(str(exc)) from None


def format_poset(P: Poset) -> str:
    out = [f"elem {x}" for x in P.labels]
    out += [f"lt {P.labels[i]} {P.labels[j]}" for i, j in P.covers()]
    return "\n".join(out) + "\n"


def parse_realizer(text: str) -> list[list[str]]:
    exts = []
    for no, line in _lines(text):
        if not line.startswith("ext:"):
            raise FormatError(f"line {no}: expected 'ext: <labels>'")
        exts.append(line[4:].split())
    return exts


def format_realizer(R) -> str:
    return "".join("ext: " + " ".join(L) + "\n" for L in R)


def looks_like_map(text: str) -> bool:
    for _, line in _lines(text):
        return line.startswith("n ") or line.startswith("{")
    return False
