"""Path-like outerplanar maps and their vertex-edge-face dimension.

A maximal path-like map is a triangulated polygon whose triangles form a
path across the chords.  Such a map has ``dim(vef) <= 3`` exactly when its
chords admit a *permissible* oriented 3-colouring, and in that case a
realizer is assembled in linear time from three vertex orders of a fixed
template map (the "frame") into which every permissible map embeds.

Colours are ``1, 2, 3`` (red, green, blue).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .incidence import elabel, flabel, vef_poset, vlabel
from .planar_map import PlanarMap, PreconditionError, outerplane_map, subdivide_edge
from .poset import verify_realizer

RED, GREEN, BLUE = 1, 2, 3
COLOR_NAMES = {RED: "red", GREEN: "green", BLUE: "blue"}


class InconsistencyError(RuntimeError):
    """An internal invariant failed; this indicates a bug, not bad input."""


# -- recognition ------------------------------------------------------------------------


@dataclass(frozen=True)
class PathStructure:
    """Hamilton cycle plus the bounded faces in interior-dual path order.

    ``chords[i]`` is the edge shared by ``faces[i]`` and ``faces[i + 1]``.
    """
    cycle: tuple[int, ...]
    faces: tuple[int, ...]
    chords: tuple[int, ...]


def path_structure(M: PlanarMap) -> PathStructure | None:
    """Path structure of ``M`` or None if ``M`` is not path-like.

    Raises :class:`PreconditionError` if ``M`` is not simple or not
    2-connected.  Runs in linear time.
    """
    if not M.is_simple():
        raise PreconditionError("not-simple", "map has a loop or a multiple edge")
    n = M.vertex_count
    if n < 3 or not M.is_connected():
        raise PreconditionError("not-2-connected", "map is not 2-connected")
    outer = M.outer_face.vertices
    if len(set(outer)) != len(outer):
        # a 2-connected plane graph has only cycles as face boundaries
        raise PreconditionError("not-2-connected", "outer boundary repeats a vertex")
    if len(outer) != n:
        if not M.is_biconnected():
            raise PreconditionError("not-2-connected", "map is not 2-connected")
        return None
    fo = M.face_of
    links: dict[int, list[tuple[int, int]]] = {f.id: [] for f in M.faces[1:]}
    for k in range(M.edge_count):
        a, b = fo[2 * k], fo[2 * k + 1]
        if a and b:
            links[a].append((b, k))
            links[b].append((a, k))
    if any(len(v) > 2 for v in links.values()):
        return None
    ends = sorted(f for f, v in links.items() if len(v) <= 1)
    faces, chords = [ends[0]], []
    prev = None
    while True:
        nxt = [(g, k) for g, k in links[faces[-1]] if g != prev]
        if not nxt:
            break
        g, k = nxt[0]
        prev = faces[-1]
        faces.append(g)
        chords.append(k)
    # walk the outer boundary counterclockwise
    cycle = tuple(reversed(outer))
    return PathStructure(cycle, tuple(faces), tuple(chords))


def is_path_like(M: PlanarMap) -> bool:
    return path_structure(M) is not None


def is_maximal_path_like(M: PlanarMap) -> bool:
    S = path_structure(M)
    return S is not None and all(len(M.faces[f]) == 3 for f in S.faces)


def _require_maximal(M: PlanarMap) -> PathStructure:
    S = path_structure(M)
    if S is None:
        raise PreconditionError("not-path-like", "map is not path-like")
    bad = [f for f in S.faces if len(M.faces[f]) != 3]
    if bad:
        raise PreconditionError("not-maximal", f"bounded face f{bad[0]} is not a triangle")
    return S


# -- colouring --------------------------------------------------------------------------


@dataclass(frozen=True)
class OrientedColoring:
    """Colour and head of each chord, and the angle colouring behind it.

    ``angles[(face, vertex)]`` is the colour of the corner of ``vertex``
    in the bounded triangle ``face``.
    """
    color: dict[int, int]
    head: dict[int, int]
    angles: dict[tuple[int, int], int]

    def tail(self, M: PlanarMap, k: int) -> int:
        u, v = M.edges[k]
        return v if self.head[k] == u else u

    def lines(self, M: PlanarMap) -> list[str]:
        out = []
        for k in sorted(self.color):
            u, v = sorted(M.edges[k])
            out.append(f"chord {u} {v} color {self.color[k]} head {self.head[k]}")
        return out


@dataclass(frozen=True)
class Failure:
    reason: str  # "same-color-outgoing" or "bicolored-pair"
    vertices: tuple[int, ...] = ()
    faces: tuple[int, ...] = ()
    edges: tuple[int, ...] = ()
    message: str = ""


@dataclass(frozen=True)
class PermissibilityReport:
    """Outcome of the colouring test.

    When not permissible, ``failures`` lists what went wrong for each of
    the two possible chord orientations.
    """
    permissible: bool
    coloring: OrientedColoring | None = None
    failures: tuple[Failure, ...] = ()

    def __bool__(self) -> bool:
        return self.permissible

    @property
    def reason(self) -> str:
        return self.failures[0].reason if self.failures else ""

    def certificate(self) -> str:
        parts = []
        for f in self.failures:
            named = [f"v{v}" for v in f.vertices] + [f"e{k}" for k in f.edges] + [f"f{x}" for x in f.faces]
            parts.append(f"DIM4 reason={f.reason} elements={','.join(named)}")
        return "\n".join(parts)


def _third(face_vertices, a: int, b: int) -> int:
    for x in face_vertices:
        if x != a and x != b:
            return x
    raise InconsistencyError("triangle with repeated vertices")


def _propagate(M: PlanarMap, S: PathStructure, first_head: int | None) -> OrientedColoring:
    faces = M.faces
    seed = faces[S.faces[0]].vertices
    i0 = seed.index(min(seed))
    angles: dict[tuple[int, int], int] = {}
    for c, v in zip((1, 2, 3), seed[i0:] + seed[:i0]):
        angles[(S.faces[0], v)] = c
    color: dict[int, int] = {}
    head: dict[int, int] = {}
    prev = None
    for i, k in enumerate(S.chords):
        f, g = S.faces[i], S.faces[i + 1]
        a, b = M.edges[k]
        if prev is None:
            h = first_head
        else:
            # the vertex shared with the previous chord keeps its role
            pa, pb = M.edges[prev]
            s = a if a in (pa, pb) else b
            h = s if head[prev] == s else (b if s == a else a)
        t = b if h == a else a
        apex = _third(faces[f].vertices, a, b)
        new = _third(faces[g].vertices, a, b)
        angles[(g, h)] = angles[(f, h)]
        angles[(g, t)] = angles[(f, apex)]
        angles[(g, new)] = angles[(f, t)]
        color[k] = angles[(f, h)]
        head[k] = h
        prev = k
    C = OrientedColoring(color, head, angles)
    _check_angle_invariants(M, S, C)
    return C


def _check_angle_invariants(M: PlanarMap, S: PathStructure, C: OrientedColoring) -> None:
    faces = M.faces
    ref = None
    for f in S.faces:
        cols = tuple(C.angles[(f, v)] for v in faces[f].vertices)
        if sorted(cols) != [1, 2, 3]:
            raise InconsistencyError(f"triangle f{f} repeats a colour")
        j = cols.index(1)
        turn = cols[j:] + cols[:j]
        if ref is None:
            ref = turn
        elif turn != ref:
            raise InconsistencyError(f"triangle f{f} has the opposite orientation")
    for i, k in enumerate(S.chords):
        f, g = S.faces[i], S.faces[i + 1]
        h = C.head[k]
        t = C.tail(M, k)
        if C.angles[(f, h)] != C.angles[(g, h)] or C.angles[(f, t)] == C.angles[(g, t)]:
            raise InconsistencyError(f"chord e{k} is not monochromatic at its head only")
        if {C.angles[(f, h)], C.angles[(f, t)], C.angles[(g, t)]} != {1, 2, 3}:
            raise InconsistencyError(f"corners around chord e{k} miss a colour")


def _violations(M: PlanarMap, S: PathStructure, C: OrientedColoring) -> list[Failure]:
    out = []
    outgoing: dict[tuple[int, int], int] = {}
    for k in S.chords:
        key = (C.tail(M, k), C.color[k])
        if key in outgoing:
            v = key[0]
            out.append(Failure("same-color-outgoing", (v,), (), (outgoing[key], k),
                               f"vertex {v} has two outgoing {COLOR_NAMES[key[1]]} chords"))
        else:
            outgoing[key] = k
    seen: dict[frozenset, int] = {}
    for f in S.faces:
        cols = {C.color[k] for k in M.faces[f].edges if k in C.color}
        if len(cols) != 2:
            continue
        key = frozenset(cols)
        if key in seen:
            names = "/".join(COLOR_NAMES[c] for c in sorted(key))
            out.append(Failure("bicolored-pair", (), (seen[key], f), (),
                               f"faces f{seen[key]} and f{f} are both {names}"))
        else:
            seen[key] = f
    return out


def permissible_coloring(M: PlanarMap) -> PermissibilityReport:
    """Decide whether the chords of ``M`` admit a permissible colouring.

    Angle colours are propagated triangle by triangle from the first face
    of the path.  Only the orientation of the first chord is free; both
    choices are tried.
    """
    S = _require_maximal(M)
    if not S.chords:
        return PermissibilityReport(True, _propagate(M, S, None))
    failures: list[Failure] = []
    for h in sorted(M.edges[S.chords[0]], reverse=True):
        C = _propagate(M, S, h)
        bad = _violations(M, S, C)
        if not bad:
            return PermissibilityReport(True, C)
        failures.extend(bad)
    return PermissibilityReport(False, None, tuple(failures))


def sink_source_profile(C: OrientedColoring, M: PlanarMap) -> list[str]:
    """``"sink"``, ``"source"`` or ``"isolated"`` for every vertex."""
    ins = [0] * M.vertex_count
    outs = [0] * M.vertex_count
    for k, h in C.head.items():
        ins[h] += 1
        outs[C.tail(M, k)] += 1
    roles = []
    for v in range(M.vertex_count):
        if ins[v] and outs[v]:
            raise InconsistencyError(f"vertex {v} has both incoming and outgoing chords")
        roles.append("sink" if ins[v] else "source" if outs[v] else "isolated")
    return roles


# -- the frame ----------------------------------------------------------------------------
#
# The frame has bottom vertices p0..p5 and a top chain of sources.  The four
# sinks p1..p4 each receive a fan of chords from consecutive top vertices;
# neighbouring fans share one top vertex.  Top vertices q1..q5 are the fan
# ends; extra top vertices inside a fan are named q<j>.<i>.

FRAME_SINK_COLORS = (RED, BLUE, GREEN, RED)  # colours of the chords into p1..p4

# vertex orders of the frame, lowest first, one per colour
FRAME_ORDERS = {
    GREEN: ("p1", "p2", "q2", "q1", "p0", "q3", "p4", "p5", "q5", "q4", "p3"),
    BLUE: ("p4", "p3", "q4", "q5", "p5", "q3", "p1", "p0", "q1", "q2", "p2"),
    RED: ("p2", "p3", "q3", "q2", "q4", "q1", "q5", "p0", "p5", "p1", "p4"),
}


def _fan_ends(contract: int | None) -> list[tuple[str, str]]:
    """Names of the first and last source of the fans into p1..p4."""
    if contract == 2:
        return [("q1", "q2"), ("q2", "q2"), ("q2", "q4"), ("q4", "q5")]
    if contract == 3:
        return [("q1", "q2"), ("q2", "q3"), ("q3", "q3"), ("q3", "q5")]
    return [("q1", "q2"), ("q2", "q3"), ("q3", "q4"), ("q4", "q5")]


def _fan_names(sizes: tuple[int, ...], contract: int | None) -> list[list[str]]:
    fans = []
    for j, (a, b) in enumerate(_fan_ends(contract)):
        size = sizes[j]
        if a == b:
            fans.append([a])
        else:
            fans.append([a] + [f"q{j + 1}.{i}" for i in range(1, size - 1)] + [b])
    return fans


def frame_vertex_orders(sizes: tuple[int, ...], contract: int | None) -> dict[int, list[str]]:
    """Vertex orders of the frame with the given fan sizes."""
    fans = _fan_names(sizes, contract)
    out = {}
    for col, base in FRAME_ORDERS.items():
        seq = list(base)
        # the merged top vertex keeps one of the two old places
        if contract == 2:
            if col == RED:
                seq.remove("q2")
                seq[seq.index("q3")] = "q2"
            else:
                seq.remove("q3")
        elif contract == 3:
            if col == RED:
                seq.remove("q4")
            else:
                seq.remove("q3")
                seq[seq.index("q4")] = "q3"
        pos = {x: i for i, x in enumerate(seq)}
        below: dict[str, list[str]] = {}
        for fan in fans:
            inner = fan[1:-1]
            if not inner:
                continue
            a, b = fan[0], fan[-1]
            if pos[a] > pos[b]:
                inner = inner[::-1]
            below.setdefault(max(a, b, key=pos.__getitem__), []).extend(inner)
        res = []
        for x in seq:
            res.extend(below.get(x, ()))
            res.append(x)
        out[col] = res
    return out


def frame_map(sizes: tuple[int, ...], contract: int | None = None) -> tuple[PlanarMap, list[str], dict[int, int]]:
    """The frame as a map; returns ``(map, names, chord colours)``."""
    fans = _fan_names(sizes, contract)
    tops: list[str] = []
    for fan in fans:
        tops.extend(x for x in fan if not tops or x != tops[-1])
    names = [f"p{i}" for i in range(6)] + tops
    ix = {x: i for i, x in enumerate(names)}
    cycle = [ix[f"p{i}"] for i in range(6)] + [ix[x] for x in reversed(tops)]
    chords, colors = [], {}
    for j, fan in enumerate(fans):
        for x in fan:
            chords.append((ix[x], ix[f"p{j + 1}"]))
    M = outerplane_map(cycle, chords)
    for j, fan in enumerate(fans):
        for x in fan:
            colors[M.edge_between(ix[x], ix[f"p{j + 1}"])] = FRAME_SINK_COLORS[j]
    return M, names, colors


@dataclass(frozen=True)
class CanonicalDecomposition:
    """Embedding of a permissible map into the frame.

    ``role[v]`` is the frame name of vertex ``v``; ``color_map`` sends the
    map's chord colours to the frame's.  ``ops`` lists how the frame is
    turned into the map: at most one contraction of a top edge, top-edge
    subdivisions (each new top vertex joined to the fan's sink), and
    deletion of everything beyond a chord.
    """
    role: dict[int, str]
    sizes: tuple[int, int, int, int]
    contract: int | None
    color_map: dict[int, int]
    ops: tuple[tuple, ...]

    def kept(self) -> set[str]:
        return set(self.role.values())


def canonical_decomposition(M: PlanarMap, C: OrientedColoring) -> CanonicalDecomposition:
    S = _require_maximal(M)
    faces = M.faces
    if not S.chords:
        # a single triangle sits in the frame as p0 q1 p1
        a, b, c = sorted(faces[S.faces[0]].vertices)
        role = {a: "p0", b: "q1", c: "p1"}
        ops = (("delete-right", "q1", "p1"),)
        return CanonicalDecomposition(role, (2, 2, 2, 2), None, {1: 1, 2: 2, 3: 3}, ops)
    runs: list[tuple[int, list[int]]] = []
    for k in S.chords:
        h, t = C.head[k], C.tail(M, k)
        if runs and runs[-1][0] == h:
            runs[-1][1].append(t)
        else:
            runs.append((h, [t]))
    if len(runs) > 4:
        raise InconsistencyError(f"permissible colouring with {len(runs)} sinks")
    for (_, a), (_, b) in zip(runs, runs[1:]):
        if a[-1] != b[0]:
            raise InconsistencyError("consecutive fans do not share a source")
    k = len(runs)
    single = [j + 1 for j in range(1, k - 1) if len(runs[j][1]) == 1]
    if len(single) > 1 or (single and single[0] not in (2, 3)):
        raise InconsistencyError("more than one source of outdegree three")
    contract = single[0] if single else None

    first, last = S.chords[0], S.chords[-1]
    end_l = _third(faces[S.faces[0]].vertices, *M.edges[first])
    end_r = _third(faces[S.faces[-1]].vertices, *M.edges[last])
    fans = [list(t) for _, t in runs]
    left_p0 = len(fans[0]) >= 2
    right_p5 = k == 4 and len(fans[-1]) >= 2
    if not left_p0:
        fans[0].insert(0, end_l)
    if not right_p5:
        fans[-1].append(end_r)
    sizes = tuple(len(fans[j]) if j < k else 2 for j in range(4))
    names = _fan_names(sizes, contract)
    role: dict[int, str] = {}
    for j in range(k):
        role[runs[j][0]] = f"p{j + 1}"
        for v, x in zip(fans[j], names[j]):
            if role.get(v, x) != x:
                raise InconsistencyError(f"vertex {v} maps to both {role[v]} and {x}")
            role[v] = x
    if left_p0:
        role[end_l] = "p0"
    if right_p5:
        role[end_r] = "p5"
    if len(role) != M.vertex_count:
        raise InconsistencyError("frame embedding misses vertices")

    color_map: dict[int, int] = {}
    for j in range(k):
        mc, fc = C.color[M.edge_between(runs[j][1][0], runs[j][0])], FRAME_SINK_COLORS[j]
        if color_map.get(mc, fc) != fc:
            raise InconsistencyError("sink colours do not follow the frame pattern")
        color_map[mc] = fc
    free = [c for c in (1, 2, 3) if c not in color_map.values()]
    for mc in (1, 2, 3):
        if mc not in color_map:
            color_map[mc] = free.pop(0)
    if len(set(color_map.values())) != 3:
        raise InconsistencyError("sink colours do not follow the frame pattern")

    ops: list[tuple] = []
    if contract:
        ops.append(("contract", f"q{contract}", f"q{contract + 1}"))
    for j, (a, b) in enumerate(_fan_ends(contract)):
        if sizes[j] > 2:
            ops.append(("subdivide", a, b, sizes[j] - 2))
    if not left_p0:
        ops.append(("delete-left", names[0][0], "p1"))
    if not right_p5:
        ops.append(("delete-right", names[k - 1][-1], f"p{k}"))
    return CanonicalDecomposition(role, sizes, contract, color_map, tuple(ops))


def replay_decomposition(M: PlanarMap, C: OrientedColoring, D: CanonicalDecomposition) -> None:
    """Rebuild the map from the frame and compare; raise on any difference."""
    F, names, fcolors = frame_map(D.sizes, D.contract)
    back = {x: v for v, x in D.role.items()}
    if len(back) != len(D.role):
        raise InconsistencyError("two vertices share a frame name")
    keep = {i for i, x in enumerate(names) if x in back}
    fedges = {}
    for k, (a, b) in enumerate(F.edges):
        if a in keep and b in keep:
            fedges[frozenset((back[names[a]], back[names[b]]))] = k
    medges = {frozenset(e): k for k, e in enumerate(M.edges)}
    if set(fedges) != set(medges):
        diff = sorted(tuple(sorted(e)) for e in set(fedges) ^ set(medges))
        raise InconsistencyError(f"replayed frame differs from the map on edges {diff[:5]}")
    for e, k in medges.items():
        if k in C.color and D.color_map[C.color[k]] != fcolors.get(fedges[e]):
            raise InconsistencyError(f"chord e{k} has the wrong colour after replay")


# -- realizers ------------------------------------------------------------------------------


def extension_from_vertex_order(M: PlanarMap, sigma: list[int], chord_color: dict[int, int], c: int) -> list[str]:
    """Linear extension of vef(M), lowest first, for colour ``c``.

    Cycle edges and chords of other colours sit just above their higher
    endpoint, then faces without a ``c``-chord just above their highest
    vertex.  The outer face follows all vertices; the ``c``-chords and the
    faces containing them come last.
    """
    rank = [0] * M.vertex_count
    for i, v in enumerate(sigma):
        rank[v] = i
    after: list[list[str]] = [[] for _ in range(M.vertex_count)]
    late_e, late_f = [], []
    for k, (u, v) in enumerate(M.edges):
        if chord_color.get(k) == c:
            late_e.append(elabel(k))
        else:
            after[u if rank[u] > rank[v] else v].append(elabel(k))
    for f in M.faces[1:]:
        if any(chord_color.get(k) == c for k in f.edges):
            late_f.append(flabel(f.id))
        else:
            after[max(f.vertices, key=rank.__getitem__)].append(flabel(f.id))
    out = []
    for v in sigma:
        out.append(vlabel(v))
        out.extend(after[v])
    # a late edge on the outer face (only in a lone triangle) stays below it
    outer_edges = {elabel(k) for k in M.faces[0].edges}
    out.extend(x for x in late_e if x in outer_edges)
    out.append(flabel(0))
    out.extend(x for x in late_e if x not in outer_edges)
    out.extend(late_f)
    return out


@dataclass
class VefRealizerResult:
    """Either three verified linear extensions or a dimension-4 certificate."""
    report: PermissibilityReport
    realizer: list[list[str]] | None = None
    decomposition: CanonicalDecomposition | None = None

    @property
    def dim4(self) -> bool:
        return self.realizer is None


def build_vef_realizer(M: PlanarMap, verify: bool = True) -> VefRealizerResult:
    """Three linear extensions realizing vef(M), or the colouring failure.

    Linear time without ``verify``; verification checks every critical
    pair and is quadratic.
    """
    report = permissible_coloring(M)
    if not report:
        return VefRealizerResult(report)
    C = report.coloring
    D = canonical_decomposition(M, C)
    orders = frame_vertex_orders(D.sizes, D.contract)
    back = {x: v for v, x in D.role.items()}
    colors = dict(C.color)
    if not colors:
        # a lone triangle: its q1 p1 side plays the frame's red chord
        colors[M.edge_between(back["q1"], back["p1"])] = 1
    realizer = []
    for col in (1, 2, 3):
        sigma = [back[x] for x in orders[D.color_map[col]] if x in back]
        realizer.append(extension_from_vertex_order(M, sigma, colors, col))
    if verify:
        check = verify_realizer(vef_poset(M).poset, realizer)
        if not check:
            raise InconsistencyError(f"built realizer fails verification: {check.message}")
    return VefRealizerResult(report, realizer, D)


def subdivide_cycle_edge_realizer(M: PlanarMap, R: list[list[str]], k: int,
                                  verify: bool = True) -> tuple[PlanarMap, list[list[str]]]:
    """Subdivide cycle edge ``k`` and update a realizer of vef(M) to match.

    In each extension the new edge through the higher endpoint takes the
    old edge's place, the other goes right below the higher endpoint, and
    the new vertex right below that.
    """
    fo = M.face_of
    if fo[2 * k] and fo[2 * k + 1]:
        raise PreconditionError("not-cycle-edge", f"edge {k} is not on the outer face")
    u, v = M.edges[k]
    M2, w, k2 = subdivide_edge(M, k)
    # edges keep their ids; faces are renamed through a surviving dart
    fmap = {}
    fo2 = M2.face_of
    for f in M.faces:
        d = next(d for d in f.darts if d >> 1 != k)
        fmap[flabel(f.id)] = flabel(fo2[d])
    e, e1, e2, wl = elabel(k), elabel(k), elabel(k2), vlabel(w)
    out = []
    for L in R:
        pos = {x: i for i, x in enumerate(L)}
        hi = vlabel(u) if pos[vlabel(u)] > pos[vlabel(v)] else vlabel(v)
        at_old, low = (e1, e2) if hi == vlabel(u) else (e2, e1)
        res = []
        for x in L:
            if x == e:
                res.append(at_old)
                continue
            if x == hi:
                res.extend((wl, low))
            res.append(fmap.get(x, x))
        out.append(res)
    if verify:
        check = verify_realizer(vef_poset(M2).poset, out)
        if not check:
            raise InconsistencyError(f"subdivided realizer fails verification: {check.message}")
    return M2, out
