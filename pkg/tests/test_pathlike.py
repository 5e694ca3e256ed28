import pytest
from hypothesis import given, settings, strategies as st

from mapdim.catalog import fan, get, snake, turn_sequence_map, two_sided_map
from mapdim.incidence import vef_poset
from mapdim.oracle import NO, YES, dim_at_most
from mapdim.pathlike import (
    build_vef_realizer,
    canonical_decomposition,
    frame_map,
    is_maximal_path_like,
    is_path_like,
    path_structure,
    permissible_coloring,
    replay_decomposition,
    sink_source_profile,
    subdivide_cycle_edge_realizer,
)
from mapdim.planar_map import PreconditionError, outerplane_map
from mapdim.poset import verify_realizer
from mapdim.structure import classify_edges

turns = st.lists(st.integers(0, 1), max_size=8)


def test_fan_and_snake_are_maximal_path_like():
    for n in range(3, 21):
        assert is_maximal_path_like(fan(n)) and is_maximal_path_like(snake(n))


def test_star_of_three_triangles_is_not_path_like():
    # a central triangle with a triangle on each side
    M = outerplane_map([0, 1, 2, 3, 4, 5], [(0, 2), (2, 4), (4, 0)])
    assert not is_path_like(M)
    with pytest.raises(PreconditionError):
        permissible_coloring(M)


def test_square_face_is_path_like_not_maximal():
    M = outerplane_map([0, 1, 2, 3, 4], [(0, 2)])
    assert is_path_like(M) and not is_maximal_path_like(M)


def test_chords_on_both_sides_are_not_path_like():
    assert path_structure(two_sided_map(6, [(0, 2)], [(3, 5)])) is None


def test_canonical_colouring():
    M = get("canonical").map
    S = path_structure(M)
    C = permissible_coloring(M).coloring
    mixed = [i for i, f in enumerate(S.faces)
             if len({C.color[k] for k in C.color if f in M.edge_faces(k)}) == 2]
    assert mixed == [2, 4, 6]
    names = get("canonical").vertex_names
    roles = dict(zip(names, sink_source_profile(C, M)))
    assert all(roles[f"p{i}"] == "sink" for i in range(1, 5))
    assert all(roles[f"q{i}"] == "source" for i in range(1, 6))
    assert roles["p0"] == roles["p5"] == "isolated"


def test_fan5_apex_is_source():
    M = fan(5)
    roles = sink_source_profile(permissible_coloring(M).coloring, M)
    assert roles[0] == "source"


def test_snake12_refused_with_bicoloured_pair():
    r = permissible_coloring(snake(12))
    assert not r and r.reason == "bicolored-pair"
    assert r.certificate().startswith("DIM4 reason=bicolored-pair")


def test_snake11_is_permissible():
    assert permissible_coloring(snake(11))


def test_canonical_decomposition_is_the_full_frame():
    M = get("canonical").map
    C = permissible_coloring(M).coloring
    D = canonical_decomposition(M, C)
    assert D.sizes == (2, 2, 2, 2) and D.contract is None and D.ops == ()
    replay_decomposition(M, C, D)


@pytest.mark.parametrize("contract", [None, 2, 3])
def test_frame_maps_are_permissible(contract):
    F, _, _ = frame_map((3, 2, 4, 2), contract)
    R = build_vef_realizer(F)
    assert not R.dim4


def test_triangle_realizer():
    M = outerplane_map([0, 1, 2])
    R = build_vef_realizer(M)
    assert len(R.realizer) == 3 and verify_realizer(vef_poset(M).poset, R.realizer)


@settings(max_examples=40, deadline=None)
@given(turns)
def test_colouring_agrees_with_oracle(ts):
    M = turn_sequence_map(ts)
    R = build_vef_realizer(M)
    P = vef_poset(M).poset
    if R.dim4:
        assert dim_at_most(P, 3).answer == NO
    else:
        assert dim_at_most(P, 3).answer == YES
        replay_decomposition(M, R.report.coloring, R.decomposition)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=10), st.data())
def test_subdividing_a_cycle_edge_keeps_a_realizer(ts, data):
    M = turn_sequence_map(ts)
    R = build_vef_realizer(M)
    if R.dim4:
        return
    cyc, _ = classify_edges(M)
    k = data.draw(st.sampled_from(cyc))
    M2, R2 = subdivide_cycle_edge_realizer(M, R.realizer, k)
    assert M2.vertex_count == M.vertex_count + 1
    assert verify_realizer(vef_poset(M2).poset, R2)


def test_subdivided_triangle():
    M = outerplane_map([0, 1, 2])
    R = build_vef_realizer(M).realizer
    for _ in range(3):
        M, R = subdivide_cycle_edge_realizer(M, R, 0)
    assert M.vertex_count == 6 and verify_realizer(vef_poset(M).poset, R)


def test_subdividing_a_chord_is_refused():
    M = fan(5)
    R = build_vef_realizer(M).realizer
    _, chords = classify_edges(M)
    with pytest.raises(PreconditionError):
        subdivide_cycle_edge_realizer(M, R, chords[0])
