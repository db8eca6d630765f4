"""Tilings and matrices read off lattice elements.

Square regions give domino tilings, triangle regions give lozenge tilings,
and the pinned square grid gives alternating sign matrices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotSimplyConnected, WrongFamily
from .graph import BLACK, WHITE, MultiGraph
from .orientations import Orientation, OrientationLattice


@dataclass(frozen=True)
class Region:
    """Cells of the square or triangular lattice with their adjacency graph.

    Graph vertex ``i`` is ``cells[i]``; cells are sorted.
    """

    kind: str
    cells: tuple
    graph: MultiGraph
    coloring: dict

    def to_json(self) -> dict:
        return {"kind": self.kind, "cells": [list(c) for c in self.cells]}

    def cell_of(self, v) -> tuple:
        return self.cells[v]


def square_region(cells) -> Region:
    """Cells ``(x, y)`` (y grows upward); black when ``x + y`` is even."""
    cells = tuple(sorted({(int(x), int(y)) for x, y in cells}))
    index = {c: i for i, c in enumerate(cells)}
    edges = []
    eid = {}
    for (x, y) in cells:
        for nb in ((x + 1, y), (x, y + 1)):
            if nb in index:
                eid[frozenset(((x, y), nb))] = len(edges)
                edges.append((len(edges), index[(x, y)], index[nb]))
    rotation = {}
    for (x, y) in cells:
        rot = []
        for nb in ((x, y + 1), (x + 1, y), (x, y - 1), (x - 1, y)):  # N E S W
            key = frozenset(((x, y), nb))
            if key in eid:
                rot.append(eid[key])
        rotation[index[(x, y)]] = rot
    g = MultiGraph(range(len(cells)), edges, rotation)
    coloring = {index[c]: BLACK if (c[0] + c[1]) % 2 == 0 else WHITE for c in cells}
    return Region("squares", cells, g, coloring)


def rectangle(width: int, height: int) -> Region:
    return square_region((x, y) for x in range(width) for y in range(height))


def aztec_diamond(n: int) -> Region:
    cells = [
        (x, y)
        for x in range(-n, n)
        for y in range(-n, n)
        if abs(2 * x + 1) + abs(2 * y + 1) <= 2 * n
    ]
    return square_region(cells)


def _triangle(cell):
    x, y = cell
    return ("up" if x % 2 == 0 else "down"), x // 2, y


def triangle_region(cells) -> Region:
    """Cells ``(x, y)`` of the triangular lattice.

    Even ``x`` is the upward triangle ``(x // 2, y)``, odd ``x`` the downward
    one.  Upward triangles are black.
    """
    cells = tuple(sorted({(int(x), int(y)) for x, y in cells}))
    index = {c: k for k, c in enumerate(cells)}

    def up(i, j):
        return (2 * i, j)

    def down(i, j):
        return (2 * i + 1, j)

    edges = []
    eid = {}
    for c in cells:
        kind, i, j = _triangle(c)
        if kind != "up":
            continue
        for nb in (down(i - 1, j), down(i, j), down(i, j - 1)):
            if nb in index:
                eid[(c, nb)] = eid[(nb, c)] = len(edges)
                edges.append((len(edges), index[c], index[nb]))
    rotation = {}
    for c in cells:
        kind, i, j = _triangle(c)
        if kind == "up":
            order = (down(i - 1, j), down(i, j), down(i, j - 1))  # left, right, bottom
        else:
            order = (up(i, j + 1), up(i + 1, j), up(i, j))  # top, right, lower left
        rotation[index[c]] = [eid[(c, nb)] for nb in order if (c, nb) in eid]
    g = MultiGraph(range(len(cells)), edges, rotation)
    coloring = {index[c]: BLACK if c[0] % 2 == 0 else WHITE for c in cells}
    return Region("triangles", cells, g, coloring)


def hexagon_region(a: int, b: int, c: int) -> Region:
    """Semiregular hexagon with side lengths a, b, c, a, b, c."""
    cells = []
    for i in range(-1, a + c + 1):
        for j in range(-1, b + c + 1):
            for kind, third in (("up", Fraction(1, 3)), ("down", Fraction(2, 3))):
                ci, cj = i + third, j + third
                if 0 <= cj <= b + c and 0 <= ci <= c + a and c <= ci + cj <= a + b + c:
                    cells.append((2 * i + (kind == "down"), j))
    return triangle_region(cells)


def region_from_json(data) -> Region:
    kind = data["kind"]
    if kind == "squares":
        return square_region(data["cells"])
    if kind == "triangles":
        return triangle_region(data["cells"])
    raise ValueError(f"unknown region kind {kind!r}")


# --- domino heights ------------------------------------------------------------

def _is_black_cell(cell) -> bool:
    return (cell[0] + cell[1]) % 2 == 0


def domino_height(region: Region, tiling) -> dict:
    """Heights on lattice points of a domino tiling.

    Walking along a unit segment not crossed by a domino, the height rises by
    1/4 when the square on the left is black and falls by 1/4 otherwise.  The
    lowest corner gets height 0.  Raises NotSimplyConnected when the walk rule
    admits no global height.
    """
    if region.kind != "squares":
        raise ValueError("domino heights need a square region")
    cells = set(region.cells)
    crossed = set()
    for e in tiling:
        u, v = region.graph.ends[e]
        crossed.add(frozenset((region.cells[u], region.cells[v])))
    step = Fraction(1, 4)
    # segment (p, q) -> (left cell, right cell)
    adj = {}

    def add(p, q, left, right):
        if left in cells and right in cells and frozenset((left, right)) in crossed:
            return
        w = step if _is_black_cell(left) else -step
        adj.setdefault(p, []).append((q, w))
        adj.setdefault(q, []).append((p, -w))

    segs = set()
    for (x, y) in cells:
        for seg in (
            ((x, y), (x + 1, y), (x, y), (x, y - 1)),  # bottom, walking east
            ((x, y + 1), (x + 1, y + 1), (x, y + 1), (x, y)),  # top
            ((x, y), (x, y + 1), (x - 1, y), (x, y)),  # left, walking north
            ((x + 1, y), (x + 1, y + 1), (x, y), (x + 1, y)),  # right
        ):
            if seg[:2] not in segs:
                segs.add(seg[:2])
                add(*seg)
    start = min(adj)
    h = {start: Fraction(0)}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for q, w in adj[p]:
            if q not in h:
                h[q] = h[p] + w
                queue.append(q)
            elif h[q] != h[p] + w:
                raise NotSimplyConnected(
                    f"heights disagree at {q!r} ({h[q]} vs {h[p] + w})", (p, q)
                )
    return dict(sorted(h.items()))


def region_boundary_points(region: Region) -> frozenset:
    """Lattice points on the region's boundary."""
    cells = set(region.cells)
    pts = set()
    for (x, y) in cells:
        for nb, seg in (
            ((x, y - 1), ((x, y), (x + 1, y))),
            ((x, y + 1), ((x, y + 1), (x + 1, y + 1))),
            ((x - 1, y), ((x, y), (x, y + 1))),
            ((x + 1, y), ((x + 1, y), (x + 1, y + 1))),
        ):
            if nb not in cells:
                pts.update(seg)
    return frozenset(pts)


# --- alternating sign matrices -----------------------------------------------------

def asm_of_orientation(lattice: OrientationLattice, r: Orientation, n: int) -> tuple:
    """Signed corner sums of heights over the n*n unit squares of the pinned grid."""
    g = lattice.graph
    N = n + 1
    if g.n_vertices != N * N or len(g.pinned) != 4 * n or lattice.vstar != 0:
        raise WrongFamily(f"not a pinned grid of order {n} anchored at its corner")
    h = lattice.height(r)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            val = -h[i * N + j] + h[i * N + j + 1] + h[(i + 1) * N + j] - h[(i + 1) * N + j + 1]
            if val.denominator != 1:
                raise WrongFamily("corner sums are not integers; the bias is not 1/2")
            row.append(int(val))
        rows.append(tuple(row))
    return tuple(rows)


def is_asm(a) -> bool:
    """Entries in {-1,0,1}; non-zero entries of each line alternate, starting and ending with 1."""
    n = len(a)
    lines = [list(row) for row in a] + [[a[i][j] for i in range(n)] for j in range(n)]
    for line in lines:
        if len(line) != n or any(x not in (-1, 0, 1) for x in line):
            return False
        nz = [x for x in line if x]
        if not nz or nz[0] != 1 or nz[-1] != 1:
            return False
        if any(x == y for x, y in zip(nz, nz[1:])):
            return False
    return True


def permutation_of(a):
    """The permutation (row -> column) of a -1 free ASM, else None."""
    if any(x == -1 for row in a for x in row):
        return None
    return tuple(row.index(1) for row in a)
