"""Graph-level structure of maps: subdivisions, outerplanarity, Hamilton
cycles, chords and chord flips."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .planar_map import (
    MapError,
    PlanarMap,
    PreconditionError,
    insert_edge,
    remove_edge,
)

K4 = "K4"
K23 = "K23"

DEFAULT_SUBDIVISION_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    """A bounded search ran out of nodes before reaching a verdict."""


@dataclass(frozen=True)
class SubdivisionWitness:
    pattern: str
    branch_vertices: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]

    def pattern_edges(self) -> list[tuple[int, int]]:
        b = self.branch_vertices
        if self.pattern == K4:
            return list(combinations(b, 2))
        x, y, *mids = b
        return [(x, m) for m in mids] + [(m, y) for m in mids]

    def to_dict(self) -> dict:
        return {"pattern": self.pattern, "branch_vertices": list(self.branch_vertices),
                "paths": [list(p) for p in self.paths]}


def simple_graph(M) -> nx.Graph:
    """Simple graph view: loops dropped, parallel edges collapsed."""
    if isinstance(M, nx.Graph):
        G = nx.Graph(M)
        G.remove_edges_from(nx.selfloop_edges(G))
        return G
    G = nx.Graph()
    G.add_nodes_from(range(M.vertex_count))
    G.add_edges_from((u, v) for u, v in M.edges if u != v)
    return G


def check_witness(G: nx.Graph, w: SubdivisionWitness) -> None:
    """Raise AssertionError unless ``w`` is a subdivision of its pattern in ``G``."""
    expected = w.pattern_edges()
    assert len(w.paths) == len(expected)
    interior_used: set[int] = set()
    branch = set(w.branch_vertices)
    assert len(branch) == len(w.branch_vertices)
    for (a, b), p in zip(expected, w.paths):
        assert len(p) >= 2 and {p[0], p[-1]} == {a, b}, (a, b, p)
        for x, y in zip(p, p[1:]):
            assert G.has_edge(x, y), (x, y)
        inner = set(p[1:-1])
        assert len(inner) == len(p) - 2
        assert not inner & branch and not inner & interior_used
        interior_used |= inner


def find_subdivision(M, pattern: str, budget: int = DEFAULT_SUBDIVISION_BUDGET) -> SubdivisionWitness | None:
    """Return a subdivision of ``pattern`` (``"K4"`` or ``"K23"``) or None.

    Raises :class:`BudgetExceeded` if the K4 path search runs out of nodes.
    """
    G = simple_graph(M)
    if pattern == K23:
        return _find_k23(G)
    if pattern == K4:
        return _find_k4(G, budget)
    raise ValueError(f"unknown pattern {pattern!r}")


def _find_k23(G: nx.Graph) -> SubdivisionWitness | None:
    hubs = sorted(v for v in G if G.degree(v) >= 3)
    for x, y in combinations(hubs, 2):
        H = G
        if G.has_edge(x, y):
            H = G.copy()
            H.remove_edge(x, y)
        if not nx.has_path(H, x, y):
            continue
        if nx.node_connectivity(H, x, y) < 3:
            continue
        paths = sorted(nx.node_disjoint_paths(H, x, y), key=lambda p: (len(p), p))[:3]
        mids = [p[1] for p in paths]
        segs = [(x, p[1]) for p in paths] + [tuple(p[1:]) for p in paths]
        return SubdivisionWitness(K23, (x, y, *mids), tuple(tuple(s) for s in segs))
    return None


def _reduce_series_parallel(G: nx.Graph) -> tuple[dict[int, set[int]], dict[tuple[int, int], list[int]]]:
    """Delete degree <= 1 vertices and suppress degree-2 vertices until stuck.

    Returns the stuck graph and, for every remaining edge ``(a, b)`` with
    ``a < b``, the path of ``G`` it stands for.
    """
    adj = {v: set(G[v]) for v in G}
    path = {(min(a, b), max(a, b)): [min(a, b), max(a, b)] for a, b in G.edges}

    def get(a, b):
        p = path[(min(a, b), max(a, b))]
        return p if p[0] == a else p[::-1]

    work = list(adj)
    while work:
        v = work.pop()
        if v not in adj:
            continue
        nb = adj[v]
        if len(nb) <= 1:
            for w in nb:
                adj[w].discard(v)
                del path[(min(v, w), max(v, w))]
                work.append(w)
            del adj[v]
        elif len(nb) == 2:
            a, b = nb
            new = get(a, v) + get(v, b)[1:]
            for w in (a, b):
                adj[w].discard(v)
                del path[(min(v, w), max(v, w))]
            del adj[v]
            if b not in adj[a]:
                adj[a].add(b)
                adj[b].add(a)
                path[(min(a, b), max(a, b))] = new if a < b else new[::-1]
            work.extend((a, b))
    return adj, path


def _find_k4(G: nx.Graph, budget: int) -> SubdivisionWitness | None:
    adj, path = _reduce_series_parallel(G)
    if not adj:
        return None
    nodes = sorted(adj, key=lambda v: (-len(adj[v]), v))
    counter = [0]

    def route(pairs, used, acc):
        if not pairs:
            return acc
        a, b = pairs[0]
        # DFS over simple a-b paths avoiding used vertices
        stack = [(a, [a])]
        while stack:
            counter[0] += 1
            if counter[0] > budget:
                raise BudgetExceeded("K4 subdivision search")
            v, p = stack.pop()
            for w in sorted(adj[v], reverse=True):
                if w == b:
                    res = route(pairs[1:], used | set(p[1:]), acc + [p + [b]])
                    if res is not None:
                        return res
                elif w not in used and w not in p:
                    stack.append((w, p + [w]))
        return None

    for quad in combinations(nodes, 4):
        res = route(list(combinations(quad, 2)), set(quad), [])
        if res is None:
            continue
        full = []
        for p in res:
            seg = [p[0]]
            for x, y in zip(p, p[1:]):
                q = path[(min(x, y), max(x, y))]
                seg.extend((q if q[0] == x else q[::-1])[1:])
            full.append(tuple(seg))
        return SubdivisionWitness(K4, tuple(quad), tuple(full))
    raise BudgetExceeded("reduced graph is not series-parallel but no K4 routing was found")


# -- outerplanarity -----------------------------------------------------------------


def is_outerplanar_graph(G: nx.Graph) -> bool:
    """Outerplanarity test: ``G`` plus a universal apex vertex is planar."""
    H = simple_graph(G)
    if H.number_of_nodes() >= 2 and H.number_of_edges() > 2 * H.number_of_nodes() - 3:
        return False
    apex = ("apex",)
    H.add_edges_from((apex, v) for v in list(H.nodes))
    return nx.check_planarity(H)[0]


def is_weakly_outerplanar(M: PlanarMap) -> bool:
    if is_strongly_outerplanar(M):
        return True
    return is_outerplanar_graph(simple_graph(M))


def is_strongly_outerplanar(M: PlanarMap) -> bool:
    """Every vertex lies on the boundary walk of the outer face."""
    if M.vertex_count == 0:
        return True
    if not M.is_connected():
        return False
    if M.edge_count == 0:
        return True
    return len(set(M.outer_face.vertices)) == M.vertex_count


# -- Hamilton cycle and chords -----------------------------------------------------------


def _require_simple_2c_outerplanar(M: PlanarMap) -> None:
    if not M.is_simple():
        raise PreconditionError("not-simple", "map must be simple")
    if not M.is_biconnected():
        raise PreconditionError("not-2-connected", "map must be 2-connected")
    if not is_weakly_outerplanar(M):
        raise PreconditionError("not-outerplanar", "graph of the map is not outerplanar")


def _normalize_cycle(cyc: list[int]) -> tuple[int, ...]:
    i = cyc.index(min(cyc))
    a = cyc[i:] + cyc[:i]
    b = [a[0]] + a[1:][::-1]
    return tuple(min(a, b))


def hamilton_cycle(M: PlanarMap) -> tuple[int, ...]:
    """The unique Hamilton cycle of a simple 2-connected outerplanar map,
    starting at vertex 0 and turning towards its smaller cycle neighbour."""
    _require_simple_2c_outerplanar(M)
    if is_strongly_outerplanar(M) and len(M.outer_face) == M.vertex_count:
        return _normalize_cycle(list(M.outer_face.vertices))
    G = simple_graph(M)
    cyc_edges = []
    for u, v in G.edges:
        H = G.copy()
        H.remove_edge(u, v)
        if not nx.is_biconnected(H):
            cyc_edges.append((u, v))
    C = nx.Graph(cyc_edges)
    if C.number_of_nodes() != M.vertex_count or any(d != 2 for _, d in C.degree):
        raise MapError("removal test did not produce a Hamilton cycle")
    order = [0]
    prev = None
    while len(order) < M.vertex_count:
        nxt = [w for w in C[order[-1]] if w != prev][0]
        prev = order[-1]
        order.append(nxt)
    return _normalize_cycle(order)


def classify_edges(M: PlanarMap) -> tuple[list[int], list[int]]:
    """Split edge indices into (cycle edges, chordal edges)."""
    cyc = hamilton_cycle(M)
    n = len(cyc)
    on_cycle = {frozenset((cyc[i], cyc[(i + 1) % n])) for i in range(n)}
    cycle_edges, chords = [], []
    for k, (u, v) in enumerate(M.edges):
        (cycle_edges if frozenset((u, v)) in on_cycle else chords).append(k)
    return cycle_edges, chords


def interior_dual(M: PlanarMap) -> nx.Graph:
    """Bounded faces joined across chordal edges (edge attribute ``edge``)."""
    _require_simple_2c_outerplanar(M)
    if not is_strongly_outerplanar(M):
        raise PreconditionError("not-strongly-outerplanar", "interior dual needs an outerplane map")
    _, chords = classify_edges(M)
    D = nx.Graph()
    D.add_nodes_from(f.id for f in M.faces[1:])
    for k in chords:
        a, b = M.edge_faces(k)
        D.add_edge(a, b, edge=k)
    return D


# -- chord flips --------------------------------------------------------------------------


def face_sides(M: PlanarMap, cycle_pairs: set[frozenset]) -> list[int]:
    """Label each face 0 (the side of the Hamilton cycle holding the outer
    face) or 1 (the other side)."""
    parent = list(range(M.face_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, (u, v) in enumerate(M.edges):
        if frozenset((u, v)) not in cycle_pairs:
            a, b = M.edge_faces(k)
            parent[find(a)] = find(b)
    root = find(0)
    return [0 if find(f) == root else 1 for f in range(M.face_count)]


def _cycle_pairs(M: PlanarMap) -> set[frozenset]:
    cyc = hamilton_cycle(M)
    n = len(cyc)
    return {frozenset((cyc[i], cyc[(i + 1) % n])) for i in range(n)}


def flip_chord(M: PlanarMap, e: int, cycle_pairs: set[frozenset] | None = None) -> PlanarMap:
    """Re-embed chordal edge ``e`` on the other side of the Hamilton cycle.

    The returned map keeps the graph; the flipped edge becomes the last edge.
    """
    if cycle_pairs is None:
        cycle_pairs = _cycle_pairs(M)
    u, v = M.edges[e]
    if frozenset((u, v)) in cycle_pairs:
        raise PreconditionError("not-chordal", f"edge {e} lies on the Hamilton cycle")
    # a dart in the same face as e that is not e, mapped to ids after removal
    d = M.face_succ(2 * e)
    if (d >> 1) == e:
        raise MapError("degenerate face around chord")
    d_after = d - 2 if (d >> 1) > e else d
    R = remove_edge(M, e)
    sides = face_sides(R, cycle_pairs)
    own = sides[R.face_of[d_after]]
    target = None
    for f in R.faces:
        if sides[f.id] == own:
            continue
        if u in f.vertex_set and v in f.vertex_set:
            target = f
            break
    if target is None:
        raise MapError(f"no face on the far side contains both ends of chord {u}-{v}")
    du = next(x for x in target.darts if R.head(x) == u)
    dv = next(x for x in target.darts if R.head(x) == v)
    out, _ = insert_edge(R, du, dv)
    return out


def flip_all_inside(M: PlanarMap) -> PlanarMap:
    """Move every chord to the side of the Hamilton cycle away from the outer
    face; the result is strongly outerplanar."""
    pairs = _cycle_pairs(M)
    while True:
        sides = face_sides(M, pairs)
        outside = [k for k, (u, v) in enumerate(M.edges)
                   if frozenset((u, v)) not in pairs and sides[M.face_of[2 * k]] == 0]
        if not outside:
            return M
        M = flip_chord(M, outside[0], pairs)


def block_maps(M: PlanarMap) -> list[tuple[PlanarMap, list[int]]]:
    """2-connected components of ``M`` as maps, each with its vertex list.

    A block keeps the induced rotation; vertex ``i`` of a block is
    ``vertices[i]`` of ``M``.  Loops and isolated vertices are dropped.
    """
    G = simple_graph(M)
    out = []
    for comp in nx.biconnected_component_edges(G):
        vs = sorted({v for e in comp for v in e})
        loc = {v: i for i, v in enumerate(vs)}
        pairs = {frozenset(e) for e in comp}
        keep = [k for k, (u, v) in enumerate(M.edges) if u != v and frozenset((u, v)) in pairs]
        new = {k: i for i, k in enumerate(keep)}
        rots = [tuple(2 * new[d >> 1] + (d & 1) for d in M.rotations[v] if (d >> 1) in new) for v in vs]
        edges = tuple((loc[M.edges[k][0]], loc[M.edges[k][1]]) for k in keep)
        out.append((PlanarMap(len(vs), edges, tuple(rots), 0), vs))
    out.sort(key=lambda b: b[1])
    return out
