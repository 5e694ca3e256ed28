"""Three linear extensions of vf(M) for 2-connected maps with M and its dual
weakly outerplanar.

The map is handled as its Hamilton cycle plus two chord sets, one on each
side of the cycle.  A face is keyed by ``(side, vertex set)``; within one
map two faces share a key only when the map is a triangle, which is
handled directly.

Pipeline: contract twins (adjacent degree-2 vertices), move every chord to
one side to get a path-like map M0, order its faces along the path, insert
vertices as high as possible, then move chords back one at a time while
updating two extensions.  A third extension puts all faces above all
vertices in the reverse order of the first.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .incidence import flabel, vf_poset, vlabel
from .pathlike import InconsistencyError, path_structure
from .planar_map import PlanarMap, PreconditionError, dual, outerplane_map
from .poset import verify_realizer
from .structure import (
    _cycle_pairs,
    face_sides,
    find_subdivision,
    hamilton_cycle,
    is_weakly_outerplanar,
)

INSIDE, OUTSIDE = "in", "out"


class ClaimError(InconsistencyError):
    """A per-step invariant of the construction failed."""


@dataclass
class TwinRecord:
    """Contracted twins as ``(removed, partner)`` in contraction order."""
    pairs: list[tuple[int, int]] = field(default_factory=list)

    def expand(self, R: list[list[str]]) -> list[list[str]]:
        """Put each twin next to its partner: above it in the first
        extension, below it in the others."""
        out = [list(L) for L in R]
        for w, v in reversed(self.pairs):
            for t, L in enumerate(out):
                i = L.index(vlabel(v))
                L.insert(i + 1 if t == 0 else i, vlabel(w))
        return out


@dataclass(frozen=True)
class FlipPlan:
    """Path-like start map and the chords to move back.

    ``cycle`` is the twin-contracted Hamilton cycle (vertex ids of the
    input map); ``inside`` holds the chords of M0; ``flips`` the chords
    moved to the other side, in order.
    """
    cycle: tuple[int, ...]
    inside: tuple[tuple[int, int], ...]
    flips: tuple[tuple[int, int], ...]
    ends: tuple[int, int] | None
    twins: TwinRecord


def contract_twins(M: PlanarMap) -> tuple[tuple[int, ...], TwinRecord]:
    """Hamilton cycle of ``M`` with twins removed.

    Degree-2 vertices adjacent to another degree-2 vertex are dropped one
    by one (each recorded with the neighbour it merges into) while the
    cycle keeps more than three vertices, so the result stays simple.
    """
    cyc = list(hamilton_cycle(M))
    deg = [M.degree(v) for v in range(M.vertex_count)]
    rec = TwinRecord()
    changed = True
    while changed and len(cyc) > 3:
        changed = False
        for i in range(len(cyc)):
            v, w = cyc[i], cyc[(i + 1) % len(cyc)]
            if deg[v] == 2 and deg[w] == 2:
                rec.pairs.append((w, v))
                cyc.remove(w)
                changed = True
                break
    return tuple(cyc), rec


def _regions(cycle: tuple[int, ...], chords) -> list[frozenset[int]]:
    """Regions of the polygon ``cycle`` cut by non-crossing ``chords``."""
    pos = {v: i for i, v in enumerate(cycle)}
    P = outerplane_map(list(range(len(cycle))), [(pos[a], pos[b]) for a, b in chords])
    return [frozenset(cycle[x] for x in f.vertex_set) for f in P.faces[1:]]


def _start_map(cycle, inside):
    pos = {v: i for i, v in enumerate(cycle)}
    P = outerplane_map(list(range(len(cycle))), [(pos[a], pos[b]) for a, b in inside])
    return P, pos


def locate_ends(cycle: tuple[int, ...], inside) -> tuple[int, int]:
    """Degree-2 vertices ``(l, r)`` of the two end faces of the path-like
    map given by ``cycle`` and ``inside``; ``l`` lies in the end face with
    the lexicographically smaller sorted vertex list."""
    P, _ = _start_map(cycle, inside)
    if P.vertex_count == 3:
        raise PreconditionError("triangle", "a triangle has no distinguished ends")
    S = path_structure(P)
    if S is None:
        raise PreconditionError("not-path-like", "chords on one side do not form a path")
    ends = []
    for f in (S.faces[0], S.faces[-1]):
        vs = [x for x in P.faces[f].vertices if P.degree(x) == 2]
        if not vs:
            raise InconsistencyError("end face without a degree-2 vertex")
        ends.append((sorted(cycle[x] for x in P.faces[f].vertices), min(cycle[x] for x in vs)))
    ends.sort()
    return ends[0][1], ends[1][1]


def plan_flips(M: PlanarMap) -> FlipPlan:
    """Twin contraction, chord sides and the flip order of ``M``."""
    cycle, twins = contract_twins(M)
    pairs = _cycle_pairs(M)
    sides = face_sides(M, pairs)
    inside, outside = [], []
    for k, (u, v) in enumerate(M.edges):
        if frozenset((u, v)) in pairs:
            continue
        (inside if sides[M.face_of[2 * k]] == 1 else outside).append((u, v))
    allc = inside + outside
    if len(cycle) == 3:
        return FlipPlan(cycle, (), (), None, twins)
    ell, r = locate_ends(cycle, allc)
    # flip back in path order, starting at the l end
    P, pos = _start_map(cycle, allc)
    S = path_structure(P)
    if ell not in {cycle[x] for x in P.faces[S.faces[0]].vertices}:
        S_chords = S.chords[::-1]
    else:
        S_chords = S.chords
    order = [frozenset(cycle[x] for x in P.edges[k]) for k in S_chords]
    out = {frozenset(c) for c in outside}
    flips = tuple(tuple(sorted(c)) for c in order if c in out)
    return FlipPlan(cycle, tuple(tuple(sorted(c)) for c in allc), flips, (ell, r), twins)


def _left_right(G: nx.Graph, ell: int, r: int, F: frozenset[int]) -> tuple[set, set]:
    H = G.subgraph([x for x in G if x not in F])
    left = nx.node_connected_component(H, ell) if ell in H else set()
    right = nx.node_connected_component(H, r) if r in H else set()
    return set(left), set(right)


def side_of(G: nx.Graph, ends: tuple[int, int], x: int, F) -> tuple[bool, bool]:
    """``(left, right)``: whether a path from ``x`` to each end avoids ``F``.
    Both are false exactly when ``x`` lies on ``F``."""
    left, right = _left_right(G, ends[0], ends[1], frozenset(F))
    return x in left, x in right


def _check_step(G, ends, faces, L1, L2, step):
    for t, L in enumerate((L1, L2)):
        pos = {x: i for i, x in enumerate(L)}
        if len(pos) != G.number_of_nodes() + len(faces):
            raise ClaimError(f"step {step}: extension {t + 1} has the wrong elements")
        for key in faces:
            for v in key[1]:
                if pos[("v", v)] > pos[key]:
                    raise ClaimError(f"step {step}: extension {t + 1} puts a face below its vertex {v}")
    p1 = {x: i for i, x in enumerate(L1)}
    p2 = {x: i for i, x in enumerate(L2)}
    for key in faces:
        left, right = _left_right(G, ends[0], ends[1], key[1])
        for v in left:
            if p1[("v", v)] < p1[key]:
                raise ClaimError(f"step {step}: vertex {v} is left of a face but below it in L1")
        for v in right:
            if p2[("v", v)] < p2[key]:
                raise ClaimError(f"step {step}: vertex {v} is right of a face but below it in L2")


def _initial(cycle, inside, ends):
    P, _ = _start_map(cycle, inside)
    S = path_structure(P)
    path = [frozenset(cycle[x] for x in P.faces[f].vertex_set) for f in S.faces]
    if ends[0] not in path[0]:
        path.reverse()
    # path runs from the l end to the r end
    keys = [(INSIDE, F) for F in path]
    orders = []
    for faces in (keys[::-1], keys):
        # faces lowest first; the l face is on top of L1, the r face on top of L2
        rank = {k: i for i, k in enumerate(faces)}
        L = list(faces)
        verts = sorted(cycle, key=lambda v: (-max(rank[k] for k in keys if v in k[1]), v))
        for v in verts:
            low = min((k for k in keys if v in k[1]), key=rank.__getitem__)
            L.insert(L.index(low), ("v", v))
        L.append((OUTSIDE, frozenset(cycle)))
        orders.append(L)
    return orders


def _flip(L1, L2, inside, outside, cycle, e, ends):
    a, b = e
    ins = [F for F in _regions(cycle, inside) if a in F and b in F]
    G = [F for F in _regions(cycle, outside) if a in F and b in F]
    if len(ins) != 2 or len(G) != 1:
        raise InconsistencyError(f"chord {a}-{b} does not separate two faces")
    G = G[0]
    pos = {v: i for i, v in enumerate(cycle)}
    i, j = sorted((pos[a], pos[b]))
    arc1 = set(cycle[i + 1:j])
    left_arc = arc1 if ends[0] in arc1 else set(cycle) - arc1 - {a, b}
    Fl = ins[0] if ins[0] & left_arc else ins[1]
    Fr = ins[1] if Fl is ins[0] else ins[0]
    Fplus = Fl | Fr
    Gl = frozenset(x for x in G if x in left_arc) | {a, b}
    Gr = frozenset(x for x in G if x not in left_arc) | {a, b}
    sub1 = {(INSIDE, Fl): (INSIDE, Fplus), (OUTSIDE, G): (OUTSIDE, Gl), (INSIDE, Fr): (OUTSIDE, Gr)}
    sub2 = {(INSIDE, Fr): (INSIDE, Fplus), (OUTSIDE, G): (OUTSIDE, Gr), (INSIDE, Fl): (OUTSIDE, Gl)}
    return [sub1.get(x, x) for x in L1], [sub2.get(x, x) for x in L2]


@dataclass
class VfRealizerResult:
    realizer: list[list[str]]
    plan: FlipPlan
    steps_checked: int


def check_preconditions(M: PlanarMap) -> None:
    """Raise :class:`PreconditionError` unless the construction applies."""
    if not M.is_simple():
        raise PreconditionError("not-simple", "map has a loop or a multiple edge")
    if M.vertex_count < 3 or not M.is_biconnected():
        raise PreconditionError("not-2-connected", "map is not 2-connected")
    if not is_weakly_outerplanar(M):
        w = find_subdivision(M, "K4") or find_subdivision(M, "K23")
        raise PreconditionError("not-outerplanar", "graph of the map is not outerplanar", w)
    D = dual(M)
    if not is_weakly_outerplanar(D):
        w = find_subdivision(D, "K4") or find_subdivision(D, "K23")
        raise PreconditionError("dual-not-outerplanar", "dual of the map is not outerplanar", w)


def build_vf_realizer(M: PlanarMap, check_claims: bool = True) -> VfRealizerResult:
    """Three linear extensions realizing vf(M), verified before returning.

    With ``check_claims`` every intermediate pair of extensions is checked
    to be a linear extension with each vertex above the faces it is left
    (first) or right (second) of.
    """
    check_preconditions(M)
    plan = plan_flips(M)
    cycle = plan.cycle
    faces_of_m = M.faces
    if len(cycle) == 3:
        # a cycle: faces hold every vertex; reverse vertices and faces
        vs = [vlabel(v) for v in range(M.vertex_count)]
        fs = [flabel(f.id) for f in faces_of_m]
        R = [vs + fs, vs[::-1] + fs[::-1], vs + fs]
        return _verified(M, R, plan, 0)
    G = nx.cycle_graph(cycle)
    G.add_edges_from(plan.inside)
    inside = set(plan.inside)
    outside: set = set()
    L1, L2 = _initial(cycle, sorted(inside), plan.ends)
    steps = 0
    if check_claims:
        _check_step(G, plan.ends, _face_keys(cycle, inside, outside), L1, L2, 0)
    for e in plan.flips:
        L1, L2 = _flip(L1, L2, sorted(inside), sorted(outside), cycle, e, plan.ends)
        inside.discard(e)
        outside.add(e)
        steps += 1
        if check_claims:
            _check_step(G, plan.ends, _face_keys(cycle, inside, outside), L1, L2, steps)
    L3 = [x for x in reversed(L1) if x[0] == "v"] + [x for x in reversed(L1) if x[0] != "v"]
    # face keys to face labels of M
    pairs = _cycle_pairs(M)
    sides = face_sides(M, pairs)
    kept = set(cycle)
    label = {}
    for f in faces_of_m:
        key = (INSIDE if sides[f.id] == 1 else OUTSIDE, frozenset(f.vertex_set & kept))
        if key in label:
            raise InconsistencyError("two faces share a key")
        label[key] = flabel(f.id)
    R = []
    for L in (L1, L2, L3):
        R.append([vlabel(x[1]) if x[0] == "v" else label[x] for x in L])
    R = plan.twins.expand(R)
    return _verified(M, R, plan, steps)


def _face_keys(cycle, inside, outside):
    return ([(INSIDE, F) for F in _regions(cycle, sorted(inside))]
            + [(OUTSIDE, F) for F in _regions(cycle, sorted(outside))])


def _verified(M, R, plan, steps) -> VfRealizerResult:
    check = verify_realizer(vf_poset(M).poset, R)
    if not check:
        raise InconsistencyError(f"built vf realizer fails verification: {check.message}")
    return VfRealizerResult(R, plan, steps)
