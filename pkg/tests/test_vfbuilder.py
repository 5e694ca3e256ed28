import pytest
from hypothesis import given, settings, strategies as st

from mapdim.catalog import fan, get, snake, turn_sequence_map, two_sided_map
from mapdim.incidence import vf_poset
from mapdim.planar_map import PreconditionError, outerplane_map
from mapdim.poset import verify_realizer
from mapdim.structure import classify_edges
from mapdim.vfbuilder import build_vf_realizer, contract_twins, locate_ends, plan_flips


@st.composite
def two_sided_maps(draw):
    """A maximal path-like map with each chord kept, dropped or moved
    to the outer side."""
    M = turn_sequence_map(draw(st.lists(st.integers(0, 1), max_size=7)))
    cyc = list(M.outer_face.vertices)
    pos = {v: i for i, v in enumerate(cyc)}
    _, chords = classify_edges(M)
    ins, outs = [], []
    for k in chords:
        u, v = M.edges[k]
        c = tuple(sorted((pos[u], pos[v])))
        side = draw(st.sampled_from([None, "in", "out"]))
        if side == "in":
            ins.append(c)
        elif side == "out":
            outs.append(c)
    return two_sided_map(len(cyc), ins, outs)


def test_cycle_contracts_to_triangle():
    M = outerplane_map(list(range(6)))
    cyc, rec = contract_twins(M)
    assert len(cyc) == 3 and len(rec.pairs) == 3


def test_cycle_realizer():
    M = outerplane_map(list(range(6)))
    R = build_vf_realizer(M)
    assert len(R.realizer) == 3 and verify_realizer(vf_poset(M).poset, R.realizer)


def test_triangle_has_no_ends():
    with pytest.raises(PreconditionError) as e:
        locate_ends((0, 1, 2), [])
    assert e.value.reason == "triangle"


def test_ends_of_snake():
    M = snake(6)
    plan = plan_flips(M)
    assert plan.flips == ()
    degree_two = {v for v in range(6) if M.degree(v) == 2}
    assert set(plan.ends) == degree_two


def test_ends_of_canonical():
    M = get("canonical").map
    plan = plan_flips(M)
    names = get("canonical").vertex_names
    assert {names[v] for v in plan.ends} == {"p0", "p5"}


def test_flips_are_the_outer_side_chords():
    T = two_sided_map(7, inside=[(0, 2)], outside=[(2, 6), (2, 5), (3, 5)])
    plan = plan_flips(T)
    # the chords on the outer face's side are the ones moved back
    assert set(plan.flips) in ({(0, 2)}, {(2, 6), (2, 5), (3, 5)})
    assert len(plan.inside) == 4
    R = build_vf_realizer(T)
    assert R.steps_checked == len(plan.flips)


@pytest.mark.parametrize("name, reason", [
    ("k4", "not-outerplanar"),
    ("t4", "dual-not-outerplanar"),
    ("map_ex", "not-2-connected"),
    ("vf_non_2con", "not-2-connected"),
])
def test_refusals(name, reason):
    with pytest.raises(PreconditionError) as e:
        build_vf_realizer(get(name).map)
    assert e.value.reason == reason


def test_refusal_carries_witness():
    with pytest.raises(PreconditionError) as e:
        build_vf_realizer(get("t4").map)
    assert e.value.witness is not None and e.value.witness.pattern == "K23"


@pytest.mark.parametrize("n", [3, 5, 9, 14])
def test_fans_and_snakes(n):
    for M in (fan(n), snake(n)):
        R = build_vf_realizer(M)
        assert verify_realizer(vf_poset(M).poset, R.realizer)


@settings(max_examples=80, deadline=None)
@given(two_sided_maps())
def test_random_two_sided_maps(T):
    # the builder verifies its own output and raises otherwise
    R = build_vf_realizer(T)
    assert len(R.realizer) == 3
    assert R.steps_checked == len(R.plan.flips)
