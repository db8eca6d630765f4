from fractions import Fraction

import pytest

import oracles
from orient_lattice.errors import NotSimplyConnected, WrongFamily
from orient_lattice.families import generate
from orient_lattice.matchings import DFactorLattice
from orient_lattice.orientations import OrientationLattice
from orient_lattice.tilings import (
    asm_of_orientation,
    aztec_diamond,
    domino_height,
    is_asm,
    permutation_of,
    rectangle,
    region_boundary_points,
    square_region,
)


def tilings(region):
    return DFactorLattice(region.graph, coloring=region.coloring)


def grid_lattice(n):
    inst = generate("grid", n=n)
    return OrientationLattice(inst.reference, inst.vstar, inst.bias)


@pytest.mark.parametrize("w,h,count", [(2, 2, 2), (4, 2, 5), (3, 2, 3), (4, 4, 36)])
def test_rectangle_counts(w, h, count):
    reg = rectangle(w, h)
    assert len(tilings(reg).factors) == count == len(oracles.perfect_matchings(reg.graph))


@pytest.mark.parametrize("n,count", [(1, 2), (2, 8), (3, 64)])
def test_aztec_counts(n, count):
    reg = aztec_diamond(n)
    assert len(tilings(reg).factors) == count == len(oracles.perfect_matchings(reg.graph))


def test_domino_heights_on_2x2():
    reg = rectangle(2, 2)
    D = tilings(reg)
    hs = [domino_height(reg, m) for m in D.factors]
    bnd = region_boundary_points(reg)
    assert len(bnd) == 8
    for p in bnd:
        assert hs[0][p] == hs[1][p]
    assert abs(hs[0][(1, 1)] - hs[1][(1, 1)]) == 1
    assert all(x.denominator in (1, 2, 4) for x in hs[0].values())


@pytest.mark.parametrize("reg", [rectangle(2, 4), rectangle(4, 2), aztec_diamond(2)])
def test_boundary_heights_do_not_depend_on_tiling(reg):
    D = tilings(reg)
    bnd = region_boundary_points(reg)
    hs = [domino_height(reg, m) for m in D.factors]
    for h in hs[1:]:
        assert all(h[p] == hs[0][p] for p in bnd)


@pytest.mark.parametrize("reg", [rectangle(2, 4), aztec_diamond(2)])
def test_twist_moves_one_interior_point_by_one(reg):
    D = tilings(reg)
    for up, lo in D.hasse_diagram().covers:
        a = domino_height(reg, D.factors[up])
        b = domino_height(reg, D.factors[lo])
        diff = {p: a[p] - b[p] for p in a if a[p] != b[p]}
        assert len(diff) == 1
        assert abs(next(iter(diff.values()))) == 1


def test_ring_is_not_simply_connected():
    cells = [(x, y) for x in range(3) for y in range(3) if (x, y) != (1, 1)]
    reg = square_region(cells)
    D = tilings(reg)
    with pytest.raises(NotSimplyConnected):
        for m in D.factors:
            domino_height(reg, m)


def test_quarter_steps():
    reg = rectangle(2, 1)
    h = domino_height(reg, [0])
    assert set(h.values()) <= {Fraction(k, 4) for k in range(-8, 9)}


# alternating sign matrices

@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 7), (4, 42)])
def test_asm_counts(n, count):
    L = grid_lattice(n)
    mats = {asm_of_orientation(L, r, n) for r in L.elements}
    assert len(mats) == len(L) == count
    assert all(is_asm(a) for a in mats)


def test_asms_match_brute_force():
    L = grid_lattice(3)
    got = {asm_of_orientation(L, r, 3) for r in L.elements}
    assert got == set(oracles.asm_brute(3))


def test_grid_orientations_match_oracle():
    for n in (2, 3):
        L = grid_lattice(n)
        assert sorted(r.bits for r in L.elements) == oracles.all_orientations_like(L.graph, L.reference)


def test_permutation_matrices_carry_strong_bruhat_order():
    L = grid_lattice(3)
    leq = L.leq_matrix()
    perms = []
    for i, r in enumerate(L.elements):
        p = permutation_of(asm_of_orientation(L, r, 3))
        if p is not None:
            perms.append((p, i))
    assert len(perms) == 6
    items = [p for p, _ in perms]
    where = dict(perms)
    covers = oracles.induced_cover_graph(items, lambda x, y: bool(leq[where[x], where[y]]))
    assert covers == oracles.strong_bruhat_cover_graph(3)
    assert covers != oracles.weak_order_cover_graph(3, "right")


def test_is_asm_rejects():
    assert not is_asm(((1, 0), (1, 0)))
    assert not is_asm(((0, 1, 0), (1, -1, 1), (0, 0, 0)))
    assert is_asm(((0, 1, 0), (1, -1, 1), (0, 1, 0)))


def test_asm_needs_pinned_grid():
    inst = generate("cycle", n=4, k=2)
    L = OrientationLattice(inst.reference, inst.vstar, inst.bias)
    with pytest.raises(WrongFamily):
        asm_of_orientation(L, L.bottom, 1)
