import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from mapdim.catalog import fan, get, map_from_graph, snake, turn_sequence_map, two_sided_map
from mapdim.planar_map import PreconditionError, dual
from mapdim.structure import (
    K23,
    K4,
    block_maps,
    check_witness,
    classify_edges,
    find_subdivision,
    flip_all_inside,
    flip_chord,
    hamilton_cycle,
    interior_dual,
    is_outerplanar_graph,
    is_strongly_outerplanar,
    is_weakly_outerplanar,
    simple_graph,
)


def test_k4_witness():
    M = get("k4").map
    w = find_subdivision(M, K4)
    assert w is not None and sorted(w.branch_vertices) == [0, 1, 2, 3]
    check_witness(simple_graph(M), w)


def test_k23_witness():
    M = get("k23").map
    w = find_subdivision(M, K23)
    assert w is not None and len(w.paths) == 6
    check_witness(simple_graph(M), w)
    assert find_subdivision(M, K4) is None


def test_subdivided_k4_witness_has_long_paths():
    G = nx.complete_graph(4)
    G.remove_edge(0, 1)
    nx.add_path(G, [0, 4, 5, 1])
    w = find_subdivision(map_from_graph(G), K4)
    check_witness(G, w)
    assert max(len(p) for p in w.paths) == 4


@pytest.mark.parametrize("n", [3, 6, 10])
def test_outerplane_maps_have_no_witness(n):
    M = fan(n)
    assert find_subdivision(M, K4) is None and find_subdivision(M, K23) is None


@given(st.integers(2, 8), st.integers(2, 8))
def test_complete_bipartite_outerplanarity(a, b):
    # K2,2 is a 4-cycle; anything larger contains K2,3
    G = nx.complete_bipartite_graph(a, b)
    assert is_outerplanar_graph(G) == (a == b == 2)


def test_strong_vs_weak():
    M = fan(6)
    assert is_strongly_outerplanar(M) and is_weakly_outerplanar(M)
    T = two_sided_map(6, inside=[(0, 2)], outside=[(3, 5)])
    assert not is_strongly_outerplanar(T) and is_weakly_outerplanar(T)
    assert not is_weakly_outerplanar(get("k4").map)


def test_hamilton_cycle_of_two_sided_map():
    T = two_sided_map(7, inside=[(0, 3)], outside=[(3, 5), (0, 5)])
    assert hamilton_cycle(T) == (0, 1, 2, 3, 4, 5, 6)


def test_hamilton_cycle_refuses():
    with pytest.raises(PreconditionError) as e:
        hamilton_cycle(get("k4").map)
    assert e.value.reason == "not-outerplanar"
    with pytest.raises(PreconditionError) as e:
        hamilton_cycle(get("map_ex").map)
    assert e.value.reason == "not-2-connected"


@given(st.lists(st.integers(0, 1), max_size=10))
def test_chords_and_interior_dual_path(ts):
    M = turn_sequence_map(ts)
    cyc, chords = classify_edges(M)
    assert len(cyc) == M.vertex_count and len(chords) == M.vertex_count - 3
    D = interior_dual(M)
    assert nx.is_tree(D) and max((d for _, d in D.degree), default=0) <= 2


def test_interior_dual_of_fan_is_path():
    D = interior_dual(fan(7))
    assert nx.is_isomorphic(D, nx.path_graph(5))


@settings(max_examples=30)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=8), st.data())
def test_flip_keeps_graph_and_flip_back_restores(ts, data):
    M = turn_sequence_map(ts)
    _, chords = classify_edges(M)
    k = data.draw(st.sampled_from(chords))
    F = flip_chord(M, k)
    assert nx.utils.graphs_equal(simple_graph(F), simple_graph(M))
    assert not is_strongly_outerplanar(F)
    back = flip_all_inside(F)
    assert is_strongly_outerplanar(back)
    assert nx.utils.graphs_equal(simple_graph(back), simple_graph(M))


def test_flip_all_inside_of_two_sided():
    T = two_sided_map(8, inside=[(0, 4)], outside=[(1, 3), (4, 7), (5, 7)])
    S = flip_all_inside(T)
    assert is_strongly_outerplanar(S) and S.edge_count == T.edge_count


def test_flip_refuses_cycle_edge():
    M = fan(5)
    cyc, _ = classify_edges(M)
    with pytest.raises(PreconditionError):
        flip_chord(M, cyc[0])


def test_dual_of_two_sided_is_outerplanar():
    T = two_sided_map(6, inside=[(0, 2), (0, 3)], outside=[(3, 5)])
    assert is_weakly_outerplanar(dual(T))


def test_block_maps_of_non_2_connected():
    blocks = block_maps(get("vf_non_2con").map)
    assert sorted(B.vertex_count for B, _ in blocks) == [5, 5, 5, 12]
    for B, verts in blocks:
        assert B.is_biconnected() and len(verts) == B.vertex_count


def test_block_maps_of_biconnected_is_itself():
    M = snake(7)
    (B, verts), = block_maps(M)
    assert B.edge_count == M.edge_count and sorted(verts) == list(range(7))


def test_block_maps_of_map_ex():
    blocks = block_maps(get("map_ex").map)
    assert len(blocks) >= 2
    assert all(B.is_biconnected() or B.edge_count == 1 for B, _ in blocks)
