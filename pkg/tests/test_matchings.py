import pytest

import oracles
from helpers import c4, two_circles
from orient_lattice.errors import IsFstar, NoDFactor, NotAlternating, WrongDegrees
from orient_lattice.families import generate
from orient_lattice.graph import BLACK, MultiGraph, grid_graph
from orient_lattice.matchings import DFactorLattice, check_dfactor, enumerate_dfactors, prune_live, superimpose


def region_lattice(name, **params):
    inst = generate(name, **params)
    return DFactorLattice(inst.graph, inst.degrees, inst.fstar, coloring=inst.coloring)


def test_c4_has_two_perfect_matchings():
    D = DFactorLattice(c4())
    assert D.factors == [frozenset({0, 2}), frozenset({1, 3})]
    assert D.bottom == frozenset({0, 2}) and D.top == frozenset({1, 3})


def test_c4_twists():
    D = DFactorLattice(c4())
    pos, neg = D.alternating_faces(D.bottom)
    assert D.fstar in pos and neg == [1]
    assert D.twist_up(D.bottom, 1) == D.top
    assert D.twist_down(D.top, 1) == D.bottom
    with pytest.raises(NotAlternating):
        D.twist_down(D.bottom, 1)
    with pytest.raises(IsFstar):
        D.twist_down(D.bottom, D.fstar)


def test_face_heights_move_by_one():
    D = DFactorLattice(c4())
    lo, hi = D.face_height(D.bottom), D.face_height(D.top)
    assert lo[D.fstar] == hi[D.fstar] == 0
    assert hi[1] - lo[1] == 1


def test_grid_2x3_is_a_chain_of_three():
    D = DFactorLattice(grid_graph(2, 3))
    assert len(D.factors) == 3
    assert oracles.rank_counts(oracles.library_digraph(D.hasse_diagram())) == (1, 1, 1)


def test_grid_4x4_count():
    g = grid_graph(4, 4)
    assert len(DFactorLattice(g).factors) == 36 == len(oracles.perfect_matchings(g))


def test_vertex_circulation_is_degree_minus_twice_d():
    g = grid_graph(2, 3)
    D = DFactorLattice(g)
    for m in D.factors:
        for v in g.vertices:
            sign = -1 if D.color[v] == BLACK else 1
            assert D.vertex_circulation(m, v) == sign * (g.degree(v) - 2)


def test_duality_bijection_round_trip():
    D = DFactorLattice(grid_graph(4, 4))
    for m in D.factors:
        assert D.dfactor_of_orientation(D.orientation_of_dfactor(m)) == m
    assert len(D.lattice) == len(D.factors)


def test_two_circles_has_forced_class():
    g = two_circles()
    D = DFactorLattice(g)
    assert len(D.factors) == 4
    L = D.lattice
    assert max(len(cl) for cl in L.classes) == 4
    assert oracles.rank_counts(oracles.library_digraph(D.hasse_diagram())) == (1, 1, 1, 1)
    spokes = set(range(16, 20))
    assert not any(m & spokes for m in D.factors)
    assert prune_live(g).impossible >= frozenset(spokes)


@pytest.mark.parametrize("params,count", [((1, 1, 1), 2), ((1, 2, 2), 6), ((2, 2, 2), 20)])
def test_hexagon_counts(params, count):
    a, b, c = params
    D = region_lattice("hexagon", a=a, b=b, c=c)
    assert len(D.factors) == count == len(oracles.perfect_matchings(D.graph))


def test_general_degrees():
    # K_{2,2} doubled: every vertex of degree 4 takes two edges
    edges = [(0, 0, 1), (1, 0, 1), (2, 1, 2), (3, 1, 2), (4, 2, 3), (5, 2, 3), (6, 3, 0), (7, 3, 0)]
    rot = {0: [7, 6, 0, 1], 1: [1, 0, 2, 3], 2: [3, 2, 4, 5], 3: [5, 4, 6, 7]}
    g = MultiGraph(range(4), edges, rot)
    D = DFactorLattice(g, degrees=2)
    for m in D.factors:
        check_dfactor(g, {v: 2 for v in g.vertices}, m)
        assert all(D.vertex_circulation(m, v) == 0 for v in g.vertices)
    assert len(D.factors) == len(enumerate_dfactors(g, 2))


def test_wrong_degrees_rejected():
    with pytest.raises(WrongDegrees):
        check_dfactor(c4(), {v: 1 for v in range(4)}, {0, 1})


def test_no_dfactor():
    g = grid_graph(1, 3)
    with pytest.raises(NoDFactor):
        DFactorLattice(g)


def test_superimpose_gives_alternating_cycle():
    g = c4()
    cycles = superimpose(g, frozenset({0, 2}), frozenset({1, 3}))
    assert len(cycles) == 1 and len(cycles[0]) == 4
    assert superimpose(g, frozenset({0, 2}), frozenset({0, 2})) == []
