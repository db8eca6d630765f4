import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import c4, grid_orientations, k4, path_graph
from orient_lattice.errors import BadRotation, Disconnected, NotBipartite, NotSphere, SelfLoop
from orient_lattice.graph import (
    BLACK,
    WHITE,
    DirectedEdge,
    MultiGraph,
    accessibility_partition,
    bipartite_coloring,
    build_graph,
    cycle_basis,
    dual_graph,
    embedding,
    grid_graph,
    is_isomorphic_embedded,
    trace_faces,
)
from orient_lattice.orientations import Orientation


def test_c4_builds():
    g = c4()
    assert g.n_vertices == 4 and g.n_edges == 4


def test_self_loop_rejected():
    with pytest.raises(SelfLoop):
        MultiGraph([0, 1], [(0, 0, 1), (1, 1, 1)])


def test_disconnected_rejected():
    tri = [(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 3, 4), (4, 4, 5), (5, 5, 3)]
    with pytest.raises(Disconnected):
        MultiGraph(range(6), tri)


def test_rotation_missing_edge():
    with pytest.raises(BadRotation):
        MultiGraph([0, 1], [(0, 0, 1), (1, 0, 1)], {0: [0, 1], 1: [0]})


def test_rotation_duplicated_edge():
    with pytest.raises(BadRotation):
        MultiGraph([0, 1], [(0, 0, 1), (1, 0, 1)], {0: [0, 0], 1: [0, 1]})


def test_build_graph_from_json_shape():
    data = {
        "vertices": [0, 1, 2],
        "edges": [{"id": 0, "ends": [0, 1]}, {"id": 1, "ends": [1, 2]}],
        "rotation": {"0": [0], "1": [0, 1], "2": [1]},
        "pinned": [{"edge": 1, "tail": 2, "head": 1}],
    }
    g = build_graph(data)
    assert g.rotation[1] == (0, 1)
    assert g.pinned[1] == DirectedEdge(1, 2, 1)
    assert build_graph(g.to_dict()) == g


def test_multiple_edges_allowed():
    g = MultiGraph([0, 1], [(0, 0, 1), (1, 0, 1), (2, 1, 0)], {0: [0, 1, 2], 1: [2, 1, 0]})
    assert g.degree(0) == 3


# faces

def test_c4_has_two_square_faces():
    assert sorted(f.degree for f in trace_faces(c4())) == [4, 4]


def test_tree_has_one_face_counting_edges_twice():
    faces = trace_faces(path_graph(3))
    assert [f.degree for f in faces] == [6]


def test_grid_2x2_has_five_faces():
    g = grid_graph(3, 3)
    assert sorted(f.degree for f in trace_faces(g)) == [4, 4, 4, 4, 8]


def test_not_sphere():
    # K4 drawn with a rotation of genus one
    g = MultiGraph(
        range(4),
        [(0, 0, 1), (1, 0, 2), (2, 0, 3), (3, 1, 2), (4, 1, 3), (5, 2, 3)],
        {0: [0, 1, 2], 1: [0, 3, 4], 2: [1, 3, 5], 3: [2, 4, 5]},
    )
    with pytest.raises(NotSphere):
        embedding(g)


def test_faces_lie_left_of_their_darts():
    g = grid_graph(3, 3)
    emb = embedding(g)
    for f in emb.faces:
        for d in f.boundary:
            assert emb.left_face(d) == f.id
            assert emb.right_face(d.reversed()) == f.id


# duals

def test_c4_dual_is_four_parallel_edges():
    d, corr = dual_graph(c4())
    assert d.n_vertices == 2 and d.n_edges == 4
    assert all(set(d.ends[e]) == {0, 1} for e in d.edges)
    assert corr == {e: e for e in range(4)}


def test_grid_2x2_dual_counts():
    d, _ = dual_graph(grid_graph(3, 3))
    assert (d.n_vertices, d.n_edges) == (5, 12)


@pytest.mark.parametrize("g", [c4(), k4(), grid_graph(3, 3), grid_graph(2, 4)])
def test_double_dual_is_identity(g):
    d1, _ = dual_graph(g)
    d2, _ = dual_graph(d1)
    assert is_isomorphic_embedded(g, d2, {e: e for e in g.edges})


def test_bridges_give_no_dual_edge_when_dropping_loops():
    d, corr = dual_graph(path_graph(2), drop_loops=True)
    assert d.n_edges == 0 and corr == {}


# cycle bases

def test_cycle_basis_sizes():
    assert len(cycle_basis(c4())) == 1
    assert len(cycle_basis(c4()).cycles[0]) == 4
    assert len(cycle_basis(path_graph(3))) == 0
    assert len(cycle_basis(k4())) == 3


def test_cycle_basis_is_deterministic():
    assert cycle_basis(grid_graph(3, 3)) == cycle_basis(grid_graph(3, 3))


# accessibility

def test_acyclic_c4_has_singletons():
    g = c4()
    r = Orientation.from_directed(g, {0: (0, 1), 1: (1, 2), 2: (3, 2), 3: (0, 3)})
    assert accessibility_partition(r) == tuple(frozenset([v]) for v in range(4))


def test_directed_c4_is_one_class():
    g = c4()
    r = Orientation(g, [0, 0, 0, 0])
    assert accessibility_partition(r) == (frozenset(range(4)),)


def test_two_triangles_joined_by_an_edge():
    edges = [(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 3, 4), (4, 4, 5), (5, 5, 3), (6, 2, 3)]
    g = MultiGraph(range(6), edges)
    r = Orientation(g, [0] * 7)
    parts = accessibility_partition(r)
    # oracle: mutual reachability by explicit path search
    dg = nx.DiGraph((d.tail, d.head) for d in r)
    classes = {frozenset(w for w in g.vertices if nx.has_path(dg, v, w) and nx.has_path(dg, w, v))
               for v in g.vertices}
    assert set(parts) == classes and len(parts) == 2


# colourings

def test_c4_alternating_colouring():
    col = bipartite_coloring(c4())
    assert [col[v] for v in range(4)] == [BLACK, WHITE, BLACK, WHITE]


def test_triangle_not_bipartite_with_witness():
    g = MultiGraph(range(3), [(0, 0, 1), (1, 1, 2), (2, 2, 0)])
    with pytest.raises(NotBipartite) as info:
        bipartite_coloring(g)
    assert sorted(info.value.witness) == [0, 1, 2]


def test_grid_checkerboard():
    g = grid_graph(3, 3)
    col = bipartite_coloring(g)
    for v in g.vertices:
        r, c = divmod(v, 3)
        assert col[v] == (BLACK if (r + c) % 2 == 0 else WHITE)


# properties

@settings(max_examples=40, deadline=None)
@given(grid_orientations())
def test_euler_and_face_sides(r):
    g = r.graph
    emb = embedding(g)
    assert g.n_vertices - g.n_edges + len(emb.faces) == 2
    sides = [d.edge for f in emb.faces for d in f.boundary]
    assert sorted(sides) == sorted(list(g.edges) * 2)


@settings(max_examples=40, deadline=None)
@given(grid_orientations())
def test_basis_size_and_closure(r):
    g = r.graph
    b = cycle_basis(g)
    assert len(b) == g.n_edges - g.n_vertices + 1
    for cyc in b.cycles:
        assert all(a.head == c.tail for a, c in zip(cyc, cyc[1:] + cyc[:1]))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(2, 4))
def test_grid_double_dual(rows, cols):
    g = grid_graph(rows, cols)
    d2, _ = dual_graph(dual_graph(g)[0])
    assert is_isomorphic_embedded(g, d2, {e: e for e in g.edges})


def test_every_vertex_rotation_is_cyclic_permutation_of_incident_edges():
    g = k4()
    for v in g.vertices:
        assert sorted(g.rotation[v]) == sorted(g.incident[v])
        for e in g.rotation[v]:
            assert g.ccw_succ(v, g.cw_succ(v, e)) == e


def test_is_isomorphic_embedded_detects_mismatch():
    g = c4()
    h = MultiGraph(range(4), [(0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 0, 2)], {0: [3, 0], 1: [0, 1], 2: [1, 2, 3], 3: [2]})
    assert not is_isomorphic_embedded(g, h, {e: e for e in g.edges})
    assert list(itertools.islice(g.directed_edges(), 2)) == [DirectedEdge(0, 0, 1), DirectedEdge(0, 1, 0)]
