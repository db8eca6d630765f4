"""Small embedded graphs shared by the tests."""

from __future__ import annotations

import math

from hypothesis import strategies as st

from orient_lattice.errors import Disconnected
from orient_lattice.graph import MultiGraph, grid_graph
from orient_lattice.orientations import Orientation


def planar_rotation(pos, edges) -> dict:
    """Clockwise rotation read off straight-line vertex positions."""
    rot = {v: [] for v in pos}
    for e, u, v in edges:
        for a, b in ((u, v), (v, u)):
            dx, dy = pos[b][0] - pos[a][0], pos[b][1] - pos[a][1]
            rot[a].append((-math.atan2(dy, dx), e))
    return {v: [e for _, e in sorted(lst)] for v, lst in rot.items()}


def embedded(pos, edges) -> MultiGraph:
    return MultiGraph(list(pos), edges, planar_rotation(pos, edges))


def c4() -> MultiGraph:
    pos = {0: (0, 1), 1: (1, 1), 2: (1, 0), 3: (0, 0)}
    return embedded(pos, [(i, i, (i + 1) % 4) for i in range(4)])


def path_graph(n: int) -> MultiGraph:
    pos = {i: (i, 0) for i in range(n + 1)}
    return embedded(pos, [(i, i, i + 1) for i in range(n)])


def k4() -> MultiGraph:
    pos = {0: (0, 0), 1: (2, 0), 2: (1, 2), 3: (1, 0.7)}
    edges = [(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 0, 3), (4, 1, 3), (5, 2, 3)]
    return embedded(pos, edges)


def two_circles(k: int = 8) -> MultiGraph:
    """Inner and outer k-cycles joined by k/2 spokes from even inner to odd outer vertices.

    No spoke lies in a perfect matching, so the spokes' dual edges are forced and
    the faces between consecutive spokes form one accessibility class.
    """
    pos = {}
    for i in range(k):
        t = -2 * math.pi * i / k
        pos[i] = (math.cos(t), math.sin(t))
        pos[k + i] = (3 * math.cos(t), 3 * math.sin(t))
    edges = [(i, i, (i + 1) % k) for i in range(k)]
    edges += [(k + i, k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(2 * k + j, 2 * j, k + 2 * j + 1) for j in range(k // 2)]
    return embedded(pos, edges)


def grid_subgraph(rows: int, cols: int, drop) -> MultiGraph:
    """Grid graph with the edges in ``drop`` removed (when it stays connected)."""
    g = grid_graph(rows, cols)
    keep = [e for e in g.edges if e not in set(drop)]
    return g.subgraph(keep)


@st.composite
def grid_orientations(draw, max_rows=3, max_cols=4):
    """A connected embedded subgraph of a small grid with a random orientation."""
    rows = draw(st.integers(2, max_rows))
    cols = draw(st.integers(2, max_cols))
    g = grid_graph(rows, cols)
    drop = draw(st.sets(st.sampled_from(list(g.edges)), max_size=3))
    try:
        h = g.subgraph([e for e in g.edges if e not in drop])
    except Disconnected:
        h = g
    if h.n_vertices != g.n_vertices:
        h = g
    bits = draw(st.lists(st.integers(0, 1), min_size=h.n_edges, max_size=h.n_edges))
    return Orientation(h, bits)
