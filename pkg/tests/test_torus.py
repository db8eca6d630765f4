from collections import Counter

import pytest

import oracles
from orient_lattice.errors import BadParams, NotInDiagram
from orient_lattice.families import generate
from orient_lattice.torus import TorusDimers, convex_hull, is_extremal, torus_instance

EXPECTED_4x4 = {
    (0, 0): 132,
    (2, 0): 32, (-2, 0): 32, (0, 2): 32, (0, -2): 32,
    (2, 2): 2, (2, -2): 2, (-2, 2): 2, (-2, -2): 2,
    (4, 0): 1, (-4, 0): 1, (0, 4): 1, (0, -4): 1,
}


@pytest.fixture(scope="module")
def td44():
    return TorusDimers(torus_instance(4, 4))


def test_torus_embedding_has_genus_one():
    tg = torus_instance(4, 4)
    g = tg.graph
    assert g.n_vertices == 16 and g.n_edges == 32


def test_tiling_count(td44):
    assert len(td44.factors) == 272 == len(oracles.perfect_matchings(td44.graph))


def test_phase_diagram(td44):
    assert dict(td44.phase_diagram()) == EXPECTED_4x4


def test_generator_choice_keeps_counts():
    td = TorusDimers(torus_instance(4, 4, row=1, col=1))
    assert sorted(td.phase_diagram().values()) == sorted(EXPECTED_4x4.values())


def test_twists_stay_in_class(td44):
    for m in td44.factors[:40]:
        h = td44.cohomology_of(m)
        for _, n in td44.twists(m):
            assert td44.cohomology_of(n) == h


def test_components(td44):
    comps = Counter(td44.cohomology_of(c[0]) for c in td44.twist_components())
    diagram = td44.phase_diagram()
    for h, k in comps.items():
        if is_extremal(h, diagram) and abs(h[0]) == abs(h[1]) == 2:
            assert k == 2
        elif not is_extremal(h, diagram):
            assert k == 1
    assert sum(comps.values()) == 17


def test_forward_cycles_only_in_extremal_classes(td44):
    diagram = td44.phase_diagram()
    found = [m for m in td44.factors if td44.noncontractible_forward_cycle(td44.orientation(m)) is not None]
    assert len(found) == 12
    assert all(is_extremal(td44.cohomology_of(m), diagram) for m in found)


def test_small_torus():
    assert len(TorusDimers(torus_instance(2, 2)).factors) == 8


def test_hull():
    pts = [(0, 0), (4, 0), (0, 4), (-4, 0), (0, -4), (2, 2), (1, 0)]
    assert convex_hull(pts) == [(-4, 0), (0, -4), (4, 0), (0, 4)]
    assert is_extremal((2, 2), pts)
    assert not is_extremal((1, 0), pts)
    with pytest.raises(NotInDiagram):
        is_extremal((9, 9), pts)


def test_degenerate_hull():
    assert is_extremal((0, 0), [(0, 0)])
    assert is_extremal((1, 1), [(0, 0), (1, 1), (2, 2)])


def test_odd_torus_rejected():
    with pytest.raises(BadParams):
        generate("torus", m=3, n=4)
