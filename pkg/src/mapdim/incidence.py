"""Vertex-edge-face and vertex-face incidence posets of planar maps.

Labels are ``v<i>``, ``e<i>`` and ``f<i>``; ``f0`` is the outer face.
"""
from __future__ import annotations

from dataclasses import dataclass

from .planar_map import PlanarMap
from .poset import Poset


@dataclass(frozen=True)
class IncidencePoset:
    poset: Poset
    element: dict  # label -> ("v" | "e" | "f", index)

    def __len__(self) -> int:
        return len(self.poset)


def vlabel(i: int) -> str:
    return f"v{i}"


def elabel(i: int) -> str:
    return f"e{i}"


def flabel(i: int) -> str:
    return f"f{i}"


def vef_relations(M: PlanarMap) -> list[tuple[str, str]]:
    rel = []
    for k, (u, v) in enumerate(M.edges):
        for w in {u, v}:
            rel.append((vlabel(w), elabel(k)))
    for f in M.faces:
        fl = flabel(f.id)
        rel.extend((vlabel(v), fl) for v in sorted(f.vertex_set))
        rel.extend((elabel(k), fl) for k in sorted(f.edge_set))
    return rel


def vef_poset(M: PlanarMap) -> IncidencePoset:
    labels = ([vlabel(i) for i in range(M.vertex_count)]
              + [elabel(k) for k in range(M.edge_count)]
              + [flabel(f) for f in range(M.face_count)])
    P = Poset(labels, vef_relations(M))
    # boundary walks guarantee v < e < f  =>  v < f; the closure must add nothing
    direct = len(set(vef_relations(M)))
    assert P.relation_size() == direct, "face boundary walk is inconsistent with edge endpoints"
    element = {lab: (lab[0], int(lab[1:])) for lab in labels}
    return IncidencePoset(P, element)


def vf_poset(M: PlanarMap) -> IncidencePoset:
    labels = [vlabel(i) for i in range(M.vertex_count)] + [flabel(f) for f in range(M.face_count)]
    rel = [(vlabel(v), flabel(f.id)) for f in M.faces for v in sorted(f.vertex_set)]
    P = Poset(labels, rel)
    element = {lab: (lab[0], int(lab[1:])) for lab in labels}
    return IncidencePoset(P, element)


def dual_correspondence(M: PlanarMap, D: PlanarMap) -> dict[str, str]:
    """Labels of vef(M) to the matching labels of vef(D) for ``D = dual(M)``:
    face ``i`` becomes vertex ``i``, edges keep their index and each vertex
    becomes the dual face whose darts all point at it."""
    ren = {flabel(f.id): vlabel(f.id) for f in M.faces}
    ren.update({elabel(k): elabel(k) for k in range(M.edge_count)})
    for g in D.faces:
        heads = {M.head(d) for d in g.darts}
        if len(heads) != 1:
            raise ValueError("second map is not the dual of the first")
        ren[vlabel(heads.pop())] = flabel(g.id)
    return ren
