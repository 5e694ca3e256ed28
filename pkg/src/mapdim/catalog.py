"""Named example maps and parametric families.

Named maps are read from the map documents in ``data/``.  A comment line
``# names: ...`` gives readable vertex names; ``# faces: ...`` does the
same for faces where a stored realizer refers to them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from importlib import resources

import networkx as nx

from .formats import parse_map, parse_realizer
from .planar_map import PlanarMap, canonical_code, map_from_faces, outerplane_map


@dataclass
class NamedInstance:
    name: str
    map: PlanarMap
    vertex_names: list[str] = field(default_factory=list)
    face_names: list[str] = field(default_factory=list)
    # expected facts, rechecked by the tests
    expected: dict = field(default_factory=dict)
    realizer: list[list[str]] | None = None  # over v<i>/f<i> labels


_ASSETS = ("map_ex", "canonical", "bt_example", "vf_dim4", "t4", "vf_non_2con")

_EXPECTED = {
    "k3": {"dim_vef": 3},
    "k4": {"dim_vf": 4},
    "k23": {"dim_vef": 4},
    "canonical": {"dim_vef": 3},
    "bt_example": {"dim_vf": 4},
    "vf_dim4": {"dim_vf": 4},
    "t4": {"dim_vf": 3},
    "vf_non_2con": {"dim_vf": 4, "block_dim_vf": 3},
}

NAMES = ("k3", "k4", "k23") + _ASSETS


def _read(name: str) -> str:
    return resources.files("mapdim").joinpath("data").joinpath(name).read_text()


def _meta(text: str) -> dict[str, list[str]]:
    meta = {}
    for line in text.splitlines():
        if line.startswith("#") and ":" in line:
            key, val = line[1:].split(":", 1)
            key = key.strip()
            if key in ("names", "faces"):
                meta[key] = val.split()
    return meta


def get(name: str) -> NamedInstance:
    if name == "k3":
        M = outerplane_map([0, 1, 2])
    elif name == "k4":
        M = map_from_faces([(0, 1, 2), (0, 1, 3), (1, 2, 3), (0, 2, 3)])
    elif name == "k23":
        # hubs 0 and 1, middle vertices 2, 3, 4
        M = map_from_faces([(0, 2, 1, 3), (0, 3, 1, 4), (0, 4, 1, 2)])
    elif name in _ASSETS:
        text = _read(name + ".map")
        M = parse_map(text)
        meta = _meta(text)
        inst = NamedInstance(name, M, meta.get("names", []), meta.get("faces", []),
                             dict(_EXPECTED.get(name, {})))
        if name == "t4":
            inst.realizer = _relabel_realizer(inst, parse_realizer(_read("t4_realizer.txt")))
        return inst
    else:
        raise KeyError(f"unknown catalog map {name!r}; known: {', '.join(NAMES)}")
    return NamedInstance(name, M, [str(v) for v in range(M.vertex_count)], [],
                         dict(_EXPECTED.get(name, {})))


def _relabel_realizer(inst: NamedInstance, R: list[list[str]]) -> list[list[str]]:
    ren = {x: f"v{i}" for i, x in enumerate(inst.vertex_names)}
    ren.update({x: f"f{i}" for i, x in enumerate(inst.face_names)})
    return [[ren[x] for x in L] for L in R]


# -- families ----------------------------------------------------------------------------


def fan(n: int) -> PlanarMap:
    """Vertex 0 joined to every vertex of the path 1, 2, ..., n-1."""
    if n < 3:
        raise ValueError("fan needs n >= 3")
    return outerplane_map(list(range(n)), [(0, i) for i in range(2, n - 1)])


def snake(n: int) -> PlanarMap:
    """Zigzag strip: edges ``i, i+1`` and ``i, i+2``; even vertices on the
    bottom side, odd ones on top."""
    if n < 3:
        raise ValueError("snake needs n >= 3")
    bottom = list(range(0, n, 2))
    top = list(range(1, n, 2))
    cycle = bottom + top[::-1]
    # everything except the boundary: the i, i+2 edges are boundary, and so
    # are 0-1 and the last i, i+1 edge
    chords = [(i, i + 1) for i in range(1, n - 2)]
    return outerplane_map(cycle, chords)


def turn_sequence_map(turns) -> PlanarMap:
    """Triangulated polygon grown one triangle at a time.

    Start with triangle 0 1 2 and the active edge 1-2.  Each turn adds a
    vertex ``w`` on the active edge ``x-y``; turn 0 keeps ``x`` (next active
    edge ``x-w``), turn 1 keeps ``y``.  A final vertex closes the strip.
    """
    left, right = [0, 1], [2]
    chords = []
    w = 3
    for t in turns:
        chords.append((left[-1], right[-1]))
        (right if t == 0 else left).append(w)
        w += 1
    chords.append((left[-1], right[-1]))
    right.append(w)
    return outerplane_map(left + right[::-1], chords)


def two_sided_map(cycle_len: int, inside=(), outside=()) -> PlanarMap:
    """Cycle ``0 .. cycle_len-1`` with chords drawn on both sides of it."""
    cyc = tuple(range(cycle_len))
    faces = []
    for chords in (inside, outside):
        P = outerplane_map(list(cyc), chords)
        faces += [sorted(f.vertex_set) for f in P.faces[1:]]
    return map_from_faces(faces, n=cycle_len)


def enumerate_two_sided(max_n: int):
    """Maps whose chords, all moved to one side, form a path-like map:
    every chord subset of every maximal path-like map on at most ``max_n``
    vertices, with every subset of chords moved to the other side.  Up to
    isomorphism and reflection of the sphere."""
    seen = set()
    for n in range(3, max_n + 1):
        for M in enumerate_maximal_pathlike(n):
            cyc = list(M.outer_face.vertices)
            pos = {v: i for i, v in enumerate(cyc)}
            on_cycle = {frozenset((cyc[i], cyc[(i + 1) % n])) for i in range(n)}
            chords = [tuple(sorted((pos[u], pos[v]))) for u, v in M.edges
                      if frozenset((u, v)) not in on_cycle]
            for side in itertools.product((None, 0, 1), repeat=len(chords)):
                ins = [c for c, s in zip(chords, side) if s == 0]
                outs = [c for c, s in zip(chords, side) if s == 1]
                T = two_sided_map(n, ins, outs)
                code = canonical_code(T, mirror=True)
                if code not in seen:
                    seen.add(code)
                    yield T


def map_from_graph(G: nx.Graph) -> PlanarMap:
    """Some plane embedding of a connected planar graph."""
    ok, emb = nx.check_planarity(G)
    if not ok:
        raise ValueError("graph is not planar")
    nodes = sorted(G)
    ix = {v: i for i, v in enumerate(nodes)}
    rots = [[ix[w] for w in reversed(list(emb.neighbors_cw_order(v)))] for v in nodes]
    return PlanarMap.from_neighbor_rotations(rots)


def small_planar_maps(max_n: int = 7):
    """One embedding of every connected planar graph with at least one
    edge and at most ``max_n <= 7`` vertices, from the networkx atlas."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_nodes() > max_n or G.number_of_edges() == 0 or not nx.is_connected(G):
            continue
        if nx.check_planarity(G)[0]:
            yield map_from_graph(G)


def enumerate_maximal_pathlike(n: int):
    """All maximal path-like maps on ``n`` vertices up to isomorphism and
    reflection, in a fixed order."""
    if not 3 <= n <= 13:
        raise ValueError("n must be between 3 and 13")
    if n == 3:
        yield outerplane_map([0, 1, 2])
        return
    seen = set()
    for turns in itertools.product((0, 1), repeat=n - 4):
        M = turn_sequence_map(turns)
        code = canonical_code(M, mirror=True)
        if code not in seen:
            seen.add(code)
            yield M
