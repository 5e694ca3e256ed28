"""Combinatorial planar maps stored as rotation systems.

Darts: edge ``k = (u, v)`` owns darts ``2k`` (tail ``u``) and ``2k + 1``
(tail ``v``).  ``rotations[v]`` lists the darts leaving ``v`` in
counterclockwise order.  The face successor of dart ``d`` is the dart that
precedes ``rev(d)`` in the rotation at the head of ``d``; with this rule
bounded faces are traced counterclockwise (the face lies to the left of
every dart of its walk).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class MapError(ValueError):
    """Malformed or invalid map data."""


class PreconditionError(ValueError):
    """An operation was called on a map outside its domain.

    ``reason`` is a short machine-readable tag such as ``"not-simple"``.
    """

    def __init__(self, reason: str, message: str = "", witness=None):
        super().__init__(message or reason)
        self.reason = reason
        self.witness = witness


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple[int, ...]
    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    def __len__(self) -> int:
        return len(self.darts)


def rev(d: int) -> int:
    return d ^ 1


@dataclass(frozen=True, eq=False)
class PlanarMap:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    rotations: tuple[tuple[int, ...], ...]
    outer: int = 0

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "rotations", tuple(tuple(r) for r in self.rotations))
        self._validate()

    # -- construction helpers -------------------------------------------

    @classmethod
    def from_neighbor_rotations(cls, rotations: Sequence[Sequence[int]], outer: tuple[int, int] | None = None) -> "PlanarMap":
        """Build a simple map from counterclockwise neighbour lists.

        ``outer`` is a directed edge ``(u, v)`` whose left side is the outer
        face; by default the first edge found.
        """
        n = len(rotations)
        index: dict[tuple[int, int], int] = {}
        edges: list[tuple[int, int]] = []
        for u in range(n):
            for v in rotations[u]:
                if u < v and (u, v) not in index:
                    index[(u, v)] = len(edges)
                    edges.append((u, v))

        def dart(u: int, v: int) -> int:
            if u < v:
                return 2 * index[(u, v)]
            return 2 * index[(v, u)] + 1

        rots = [[dart(u, v) for v in rotations[u]] for u in range(n)]
        out = dart(*outer) if outer is not None else 0
        return cls(n, tuple(edges), tuple(map(tuple, rots)), out)

    def _validate(self) -> None:
        n, m = self.vertex_count, len(self.edges)
        if n < 0:
            raise MapError("negative vertex count")
        if len(self.rotations) != n:
            raise MapError(f"expected {n} rotations, got {len(self.rotations)}")
        for k, (u, v) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise MapError(f"edge {k} has endpoint out of range")
        seen = [0] * (2 * m)
        for v, rot in enumerate(self.rotations):
            for d in rot:
                if not 0 <= d < 2 * m:
                    raise MapError(f"dart {d} out of range at vertex {v}")
                seen[d] += 1
                if self.tail(d) != v:
                    raise MapError(f"dart {d} listed at vertex {v} but its tail is {self.tail(d)}")
        for d, c in enumerate(seen):
            if c != 1:
                raise MapError(f"dart {d} appears {c} times in rotations")
        if m and not 0 <= self.outer < 2 * m:
            raise MapError(f"outer dart {self.outer} out of range")
        # Euler characteristic per connected component (face orbits).
        comp = self.components
        verts = [0] * (max(comp, default=-1) + 1)
        for c in comp:
            verts[c] += 1
        eds = [0] * len(verts)
        for u, _ in self.edges:
            eds[comp[u]] += 1
        fcs = [0] * len(verts)
        for f in self._face_darts:
            fcs[comp[self.tail(f[0])]] += 1
        for c in range(len(verts)):
            if eds[c] == 0:
                continue
            if verts[c] - eds[c] + fcs[c] != 2:
                raise MapError(
                    f"not a valid embedding: V-E+F = {verts[c]}-{eds[c]}+{fcs[c]} != 2"
                )

    # -- dart arithmetic --------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def dart_count(self) -> int:
        return 2 * len(self.edges)

    def tail(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    def head(self, d: int) -> int:
        return self.edges[d >> 1][1 - (d & 1)]

    @cached_property
    def _position(self) -> list[int]:
        pos = [0] * self.dart_count
        for rot in self.rotations:
            for i, d in enumerate(rot):
                pos[d] = i
        return pos

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def next_ccw(self, d: int) -> int:
        rot = self.rotations[self.tail(d)]
        return rot[(self._position[d] + 1) % len(rot)]

    def prev_ccw(self, d: int) -> int:
        rot = self.rotations[self.tail(d)]
        return rot[(self._position[d] - 1) % len(rot)]

    def face_succ(self, d: int) -> int:
        return self.prev_ccw(d ^ 1)

    def neighbors(self, v: int) -> list[int]:
        return [self.head(d) for d in self.rotations[v]]

    # -- connectivity -------------------------------------------------------

    @cached_property
    def components(self) -> list[int]:
        n = self.vertex_count
        comp = [-1] * n
        adj = self.adjacency
        c = 0
        for s in range(n):
            if comp[s] >= 0:
                continue
            comp[s] = c
            stack = [s]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if comp[w] < 0:
                        comp[w] = c
                        stack.append(w)
            c += 1
        return comp

    @cached_property
    def adjacency(self) -> list[list[int]]:
        return [[self.head(d) for d in rot] for rot in self.rotations]

    def is_connected(self) -> bool:
        return self.vertex_count <= 1 or max(self.components) == 0

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v:
                return False
            key = (u, v) if u < v else (v, u)
            if key in seen:
                return False
            seen.add(key)
        return True

    def is_biconnected(self) -> bool:
        n = self.vertex_count
        if n < 3 or not self.is_connected():
            return False
        return not articulation_points(n, self.adjacency)

    # -- faces ---------------------------------------------------------------

    @cached_property
    def _face_darts(self) -> list[tuple[int, ...]]:
        m2 = self.dart_count
        seen = bytearray(m2)
        orbits = []
        outer_orbit = None
        for s in range(m2):
            if seen[s]:
                continue
            walk = []
            d = s
            while not seen[d]:
                seen[d] = 1
                walk.append(d)
                d = self.face_succ(d)
            orbits.append(tuple(walk))
        # outer face first, with its walk rotated to start at the outer dart
        for i, w in enumerate(orbits):
            if self.outer in w:
                j = w.index(self.outer)
                outer_orbit = w[j:] + w[:j]
                del orbits[i]
                break
        if outer_orbit is not None:
            orbits.insert(0, outer_orbit)
        return orbits

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        """Face orbits; face 0 is the outer face."""
        out = []
        for i, walk in enumerate(self._face_darts):
            verts = tuple(self.tail(d) for d in walk)
            out.append(Face(i, walk, verts, tuple(d >> 1 for d in walk)))
        return tuple(out)

    @cached_property
    def face_of(self) -> list[int]:
        fo = [0] * self.dart_count
        for f in self.faces:
            for d in f.darts:
                fo[d] = f.id
        return fo

    @property
    def face_count(self) -> int:
        return len(self._face_darts)

    @property
    def outer_face(self) -> Face:
        return self.faces[0]

    def edge_faces(self, k: int) -> tuple[int, int]:
        return self.face_of[2 * k], self.face_of[2 * k + 1]

    def is_bridge(self, k: int) -> bool:
        a, b = self.edge_faces(k)
        return a == b

    # -- misc -------------------------------------------------------------------

    def edge_between(self, u: int, v: int) -> int | None:
        for d in self.rotations[u]:
            if self.head(d) == v:
                return d >> 1
        return None

    def dart_from(self, u: int, v: int) -> int:
        for d in self.rotations[u]:
            if self.head(d) == v:
                return d
        raise MapError(f"no edge {u}-{v}")

    def mirror(self) -> "PlanarMap":
        return PlanarMap(
            self.vertex_count, self.edges, tuple(tuple(reversed(r)) for r in self.rotations),
            self.outer ^ 1 if self.edges else 0,
        )

    def __repr__(self) -> str:
        return f"PlanarMap(V={self.vertex_count}, E={self.edge_count}, F={self.face_count})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlanarMap):
            return NotImplemented
        return (self.vertex_count, self.edges, self.rotations, self.outer) == (
            other.vertex_count, other.edges, other.rotations, other.outer)

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges, self.rotations, self.outer))


def articulation_points(n: int, adj: Sequence[Sequence[int]]) -> set[int]:
    """Cut vertices of an undirected (multi)graph, iterative Tarjan."""
    disc = [-1] * n
    low = [0] * n
    cuts: set[int] = set()
    t = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        children = 0
        # stack of (vertex, parent, neighbour iterator index)
        stack = [(root, -1, 0)]
        skipped_parent = [False] * n
        while stack:
            u, p, i = stack[-1]
            if i < len(adj[u]):
                stack[-1] = (u, p, i + 1)
                w = adj[u][i]
                if w == p and not skipped_parent[u]:
                    skipped_parent[u] = True
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = t
                    t += 1
                    if u == root:
                        children += 1
                    stack.append((w, u, 0))
                else:
                    low[u] = min(low[u], disc[w])
            else:
                stack.pop()
                if p >= 0:
                    low[p] = min(low[p], low[u])
                    if p != root and low[u] >= disc[p]:
                        cuts.add(p)
        if children > 1:
            cuts.add(root)
    return cuts


# -- editing ----------------------------------------------------------------------
# All editors return new maps; dart ids are renumbered when edges disappear.


def _rebuild(n: int, edges: list, rots: list[list[tuple[int, int]]], outer: tuple[int, int] | None) -> PlanarMap:
    """Assemble a map from edges given as ``(key, u, v)`` and rotations of
    ``(key, side)`` tokens.  Keys are arbitrary hashables."""
    idx = {key: i for i, (key, _, _) in enumerate(edges)}
    e = tuple((u, v) for _, u, v in edges)
    r = tuple(tuple(2 * idx[k] + s for k, s in rot) for rot in rots)
    out = 2 * idx[outer[0]] + outer[1] if outer is not None and edges else 0
    return PlanarMap(n, e, r, out)


def _tokens(M: PlanarMap):
    edges = [(k, u, v) for k, (u, v) in enumerate(M.edges)]
    rots = [[(d >> 1, d & 1) for d in rot] for rot in M.rotations]
    outer = (M.outer >> 1, M.outer & 1) if M.edges else None
    return edges, rots, outer


def insert_edge(M: PlanarMap, d_in_u: int, d_in_v: int) -> tuple[PlanarMap, int]:
    """Add an edge ``u -> v`` inside one face.

    ``d_in_u`` / ``d_in_v`` are darts of that face's walk whose heads are
    ``u`` and ``v``; the new edge is placed in those corners.  Returns the
    new map and the new edge index (always the last one).
    """
    if M.face_of[d_in_u] != M.face_of[d_in_v]:
        raise MapError("corners belong to different faces")
    u, v = M.head(d_in_u), M.head(d_in_v)
    edges, rots, outer = _tokens(M)
    new = ("new",)
    edges.append((new, u, v))
    for w, d_in, side in ((u, d_in_u, 0), (v, d_in_v, 1)):
        rot = rots[w]
        i = rot.index((d_in >> 1, (d_in & 1) ^ 1))
        rot.insert(i, (new, side))
    if outer is None:
        outer = (new, 0)
    return _rebuild(M.vertex_count, edges, rots, outer), len(edges) - 1


def remove_edge(M: PlanarMap, k: int) -> PlanarMap:
    edges, rots, outer = _tokens(M)
    if M.edges and (M.outer >> 1) == k:
        d = M.face_succ(M.outer)
        while (d >> 1) == k and d != M.outer:
            d = M.face_succ(d)
        outer = (d >> 1, d & 1) if (d >> 1) != k else None
    del edges[k]
    for rot in rots:
        rot[:] = [t for t in rot if t[0] != k]
    if outer is None and edges:
        outer = (edges[0][0], 0)
    return _rebuild(M.vertex_count, edges, rots, outer)


def subdivide_edge(M: PlanarMap, k: int) -> tuple[PlanarMap, int, int]:
    """Split edge ``k = (u, v)`` by a new vertex ``w``.

    Edge ``k`` becomes ``(u, w)``; the new last edge is ``(w, v)``.
    Returns ``(map, w, new_edge_index)``.
    """
    u, v = M.edges[k]
    w = M.vertex_count
    edges, rots, outer = _tokens(M)
    new = ("sub",)
    edges[k] = (k, u, w)
    edges.append((new, w, v))
    rv = rots[v]
    if u == v:
        raise MapError("cannot subdivide a loop")
    rv[rv.index((k, 1))] = (new, 1)
    rots.append([(k, 1), (new, 0)])
    if outer == (k, 1):
        outer = (new, 1)
    return _rebuild(w + 1, edges, rots, outer), w, len(edges) - 1


def contract_edge(M: PlanarMap, k: int) -> PlanarMap:
    """Contract non-loop edge ``k = (u, v)`` merging ``v`` into ``u``.

    Vertices above ``v`` shift down by one.
    """
    u, v = M.edges[k]
    if u == v:
        raise MapError("cannot contract a loop")
    edges, rots, outer = _tokens(M)
    ru, rv = rots[u], rots[v]
    i = ru.index((k, 0))
    j = rv.index((k, 1))
    merged = ru[:i] + rv[j + 1:] + rv[:j] + ru[i + 1:]
    rots[u] = merged
    del rots[v]
    if outer is not None and outer[0] == k:
        d = M.face_succ(M.outer)
        outer = (d >> 1, d & 1)

    def rn(x: int) -> int:
        x = u if x == v else x
        return x - 1 if x > v else x

    edges = [(key, rn(a), rn(b)) for key, a, b in edges if key != k]
    return _rebuild(M.vertex_count - 1, edges, rots, outer)


def relabel(M: PlanarMap, perm: Sequence[int]) -> PlanarMap:
    """Rename vertex ``v`` to ``perm[v]``."""
    inv = [0] * len(perm)
    for v, p in enumerate(perm):
        inv[p] = v
    edges = tuple((perm[a], perm[b]) for a, b in M.edges)
    rots = tuple(M.rotations[inv[p]] for p in range(len(perm)))
    return PlanarMap(M.vertex_count, edges, rots, M.outer)


def with_outer(M: PlanarMap, dart: int) -> PlanarMap:
    return PlanarMap(M.vertex_count, M.edges, M.rotations, dart)


# -- duality and isomorphism -----------------------------------------------------------


def dual(M: PlanarMap) -> PlanarMap:
    """Dual map: one vertex per face (same numbering as ``M.faces``), edge
    ``k`` of the dual crosses edge ``k`` of ``M``; dart ``d`` of the dual
    leaves the face on the left of dart ``d``."""
    if not M.is_connected():
        raise PreconditionError("disconnected", "dual requires a connected map")
    fo = M.face_of
    edges = tuple((fo[2 * k], fo[2 * k + 1]) for k in range(M.edge_count))
    rots = tuple(f.darts for f in M.faces)
    return PlanarMap(M.face_count, edges, rots, M.outer)


def _code_from(M: PlanarMap, start: int) -> tuple:
    n_d = M.dart_count
    num = [-1] * n_d
    vorder = []
    vseen = [False] * M.vertex_count
    queue = [start]
    vseen[M.tail(start)] = True
    qi = 0
    c = 0
    while qi < len(queue):
        entry = queue[qi]
        qi += 1
        v = M.tail(entry)
        vorder.append(v)
        d = entry
        while True:
            num[d] = c
            c += 1
            h = M.head(d)
            if not vseen[h]:
                vseen[h] = True
                queue.append(d ^ 1)
            d = M.next_ccw(d)
            if d == entry:
                break
    if c != n_d:
        raise PreconditionError("disconnected", "isomorphism code needs a connected map")
    by_num = [0] * n_d
    for d in range(n_d):
        by_num[num[d]] = d
    return (tuple(M.degree(v) for v in vorder), tuple(num[by_num[i] ^ 1] for i in range(n_d)))


def canonical_code(M: PlanarMap, mirror: bool = False, rooted_outer: bool = False) -> tuple:
    """Lexicographically least BFS code over all root darts.

    With ``mirror`` the reflected map is also considered; with
    ``rooted_outer`` only darts of the outer face are used as roots.
    """
    if M.edge_count == 0:
        return (M.vertex_count,)
    cands = [M, M.mirror()] if mirror else [M]
    best = None
    for X in cands:
        roots = X.outer_face.darts if rooted_outer else range(X.dart_count)
        for s in roots:
            code = _code_from(X, s)
            if best is None or code < best:
                best = code
    return best


def isomorphic(A: PlanarMap, B: PlanarMap, mirror: bool = False, rooted_outer: bool = False) -> bool:
    if (A.vertex_count, A.edge_count, A.face_count) != (B.vertex_count, B.edge_count, B.face_count):
        return False
    return canonical_code(A, mirror, rooted_outer) == canonical_code(B, mirror, rooted_outer)


def outerplane_map(cycle: Sequence[int], chords: Iterable[tuple[int, int]] = ()) -> PlanarMap:
    """Map of a convex polygon whose corners are ``cycle`` (counterclockwise)
    with the given chords drawn inside.  The outer face is face 0."""
    n = len(cycle)
    if sorted(cycle) != list(range(n)):
        raise MapError("cycle must list every vertex exactly once")
    if n < 3:
        raise MapError("a polygon needs at least three corners")
    pos = [0] * n
    for i, v in enumerate(cycle):
        pos[v] = i
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        nbrs[a].add(b)
        nbrs[b].add(a)
    for a, b in chords:
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise MapError(f"bad chord {a}-{b}")
        nbrs[a].add(b)
        nbrs[b].add(a)
    # corners of a convex polygon are seen counterclockwise in cycle order
    rots = [sorted(nbrs[v], key=lambda w, v=v: (pos[w] - pos[v]) % n) for v in range(n)]
    return PlanarMap.from_neighbor_rotations(rots, outer=(cycle[1], cycle[0]))


def map_from_faces(faces: Sequence[Sequence[int]], n: int | None = None, outer: int | None = None) -> PlanarMap:
    """Simple map from face boundaries given as vertex cycles.

    Orientations are made consistent automatically.  Either all faces are
    given and ``outer`` picks the outer one, or one face is left out; it is
    then recovered and becomes the outer face.
    """
    faces = [list(f) for f in faces]
    if not faces:
        raise MapError("no faces given")
    n = n if n is not None else 1 + max(v for f in faces for v in f)
    # orient faces so that shared edges run in opposite directions
    owner: dict[frozenset, list[int]] = {}
    for i, f in enumerate(faces):
        for a, b in zip(f, f[1:] + f[:1]):
            owner.setdefault(frozenset((a, b)), []).append(i)
    if any(len(v) > 2 for v in owner.values()):
        raise MapError("an edge lies on more than two faces")
    done = [False] * len(faces)
    for root in range(len(faces)):
        if done[root]:
            continue
        done[root] = True
        stack = [root]
        while stack:
            i = stack.pop()
            f = faces[i]
            for a, b in zip(f, f[1:] + f[:1]):
                for j in owner[frozenset((a, b))]:
                    if j == i:
                        continue
                    g = faces[j]
                    same = any(g[t] == a and g[(t + 1) % len(g)] == b for t in range(len(g)))
                    if done[j]:
                        if same:
                            raise MapError("faces cannot be oriented consistently")
                        continue
                    if same:
                        g.reverse()
                    done[j] = True
                    stack.append(j)
    # next_ccw(x -> b) = x -> a whenever a -> x -> b is part of a face walk
    succ: list[dict[int, int]] = [dict() for _ in range(n)]
    for f in faces:
        k = len(f)
        for t in range(k):
            a, x, b = f[t - 1], f[t], f[(t + 1) % k]
            if b in succ[x]:
                raise MapError(f"vertex {x} has two corners towards {b}")
            succ[x][b] = a
    rotations = []
    missing_corner = None
    for x in range(n):
        s = succ[x]
        if not s:
            raise MapError(f"vertex {x} lies on no face")
        targets = set(s.values())
        starts = [b for b in s if b not in targets]
        ends = [a for a in targets if a not in s]
        if len(starts) > 1:
            raise MapError(f"faces around vertex {x} do not form a single fan")
        cur = starts[0] if starts else min(s)
        rot = [cur]
        while cur in s and s[cur] != rot[0]:
            cur = s[cur]
            rot.append(cur)
        if len(rot) != len(s) + (1 if starts else 0):
            raise MapError(f"faces around vertex {x} do not form a single fan")
        if starts:
            missing_corner = (ends[0], x)
        rotations.append(rot)
    if missing_corner is not None:
        # dart into the corner whose face was left out lies on that face
        a, x = missing_corner
        return PlanarMap.from_neighbor_rotations(rotations, outer=(x, a))
    f = faces[outer or 0]
    return PlanarMap.from_neighbor_rotations(rotations, outer=(f[0], f[1]))
