from itertools import combinations, permutations

from hypothesis import given, settings, strategies as st

from mapdim.catalog import get
from mapdim.incidence import vef_poset, vf_poset
from mapdim.oracle import NO, TIMEOUT, YES, dim_at_most, dimension
from mapdim.poset import Poset, verify_realizer


def brute_dimension(P: Poset) -> int:
    """Smallest number of linear extensions whose intersection is ``P``."""
    exts = [L for L in permutations(P.labels)
            if all(L.index(a) < L.index(b) for a, b in P.relations())]
    for t in range(1, len(exts) + 1):
        for R in combinations(exts, t):
            if verify_realizer(P, R):
                return t
    raise AssertionError("no realizer among all extensions")


@st.composite
def small_posets(draw):
    n = draw(st.integers(1, 6))
    labels = [f"x{i}" for i in range(n)]
    rel = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())]
    return Poset(labels, rel)


def test_chain_is_one_dimensional():
    P = Poset("abc", [("a", "b"), ("b", "c")])
    assert dim_at_most(P, 1).answer == YES


def test_antichain_is_two_dimensional():
    assert dimension(Poset("ab")).dimension == 2


def test_vf_k4():
    P = vf_poset(get("k4").map).poset
    assert dim_at_most(P, 3).answer == NO
    v = dim_at_most(P, 4)
    assert v.answer == YES and verify_realizer(P, v.realizer)


def test_vef_k23_refutes_three():
    assert dim_at_most(vef_poset(get("k23").map).poset, 3).answer == NO


def test_vef_canonical_is_three():
    assert dimension(vef_poset(get("canonical").map).poset).dimension == 3


def test_vf_bt_example_is_four():
    assert dimension(vf_poset(get("bt_example").map).poset).dimension == 4


def test_budget_gives_timeout_not_no():
    P = vf_poset(get("vf_dim4").map).poset
    assert dim_at_most(P, 3, budget_nodes=5).answer == TIMEOUT


@settings(max_examples=60, deadline=None)
@given(small_posets())
def test_oracle_matches_brute_force(P):
    d = dimension(P)
    assert d.dimension == brute_dimension(P)
    assert verify_realizer(P, d.realizer)
    if d.dimension > 1:
        assert dim_at_most(P, d.dimension - 1).answer == NO
