"""Finite connected multigraphs with rotation systems.

Embeddings are purely combinatorial: a rotation system lists, for each vertex,
its incident edges in clockwise order.  Faces are traced so that every face
lies on the left of its boundary darts, i.e. each face is walked
counterclockwise on the sphere (the outer face of a plane drawing therefore
appears clockwise on the page).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, NamedTuple

import networkx as nx

from .errors import (
    BadRotation,
    Disconnected,
    NotBipartite,
    NotSphere,
    SelfLoop,
)

BLACK = "black"
WHITE = "white"


def order_key(x):
    """Total order on ids of mixed type: ints before strings before the rest."""
    if isinstance(x, bool):
        return (2, repr(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(order_key(y) for y in x))
    return (3, repr(x))


class DirectedEdge(NamedTuple):
    edge: Hashable
    tail: Hashable
    head: Hashable

    def reversed(self) -> "DirectedEdge":
        return DirectedEdge(self.edge, self.head, self.tail)


class MultiGraph:
    """Connected loop-free multigraph, optionally embedded and pinned.

    ``edges`` is an iterable of ``(edge_id, u, v)``.  Vertex and edge ids are
    stored sorted, which fixes every canonical choice made downstream.
    """

    def __init__(self, vertices, edges, rotation=None, pinned=None):
        verts = sorted(set(vertices), key=order_key)
        if len(verts) != len(list(vertices)):
            raise ValueError("duplicate vertex ids")
        if not verts:
            raise Disconnected("graph has no vertices")
        vset = set(verts)
        ends = {}
        for eid, u, v in edges:
            if eid in ends:
                raise ValueError(f"duplicate edge id {eid!r}")
            if u not in vset or v not in vset:
                raise ValueError(f"edge {eid!r} has an unknown endpoint")
            if u == v:
                raise SelfLoop(f"edge {eid!r} is a self-loop at {u!r}")
            ends[eid] = (u, v)
        self.vertices = tuple(verts)
        self.edges = tuple(sorted(ends, key=order_key))
        self.ends = ends
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.eindex = {e: i for i, e in enumerate(self.edges)}
        incident = {v: [] for v in self.vertices}
        for e in self.edges:
            u, v = ends[e]
            incident[u].append(e)
            incident[v].append(e)
        self.incident = {v: tuple(es) for v, es in incident.items()}
        self._check_connected()

        self.rotation = None
        if rotation is not None:
            self.rotation = {}
            self._rot_pos = {}
            for v in self.vertices:
                cyc = tuple(rotation.get(v, ()))
                if sorted(cyc, key=order_key) != list(self.incident[v]):
                    raise BadRotation(
                        f"rotation at {v!r} is {list(cyc)!r}, incident edges are "
                        f"{list(self.incident[v])!r}"
                    )
                self.rotation[v] = cyc
                self._rot_pos[v] = {e: i for i, e in enumerate(cyc)}
            extra = set(rotation) - vset
            if extra:
                raise BadRotation(f"rotation lists unknown vertices {sorted(extra, key=order_key)!r}")

        self.pinned = {}
        for e, (tail, head) in (pinned or {}).items():
            if e not in ends:
                raise ValueError(f"pinned edge {e!r} is not an edge")
            if {tail, head} != set(ends[e]):
                raise ValueError(f"pin on {e!r} does not match its endpoints")
            self.pinned[e] = DirectedEdge(e, tail, head)
        self._cache = {}

    def _check_connected(self):
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            v = todo.pop()
            for e in self.incident[v]:
                w = self.other(e, v)
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != len(self.vertices):
            missing = [v for v in self.vertices if v not in seen]
            raise Disconnected(f"vertices {missing[:5]!r} unreachable from {self.vertices[0]!r}")

    # basic queries
    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def other(self, e, v):
        a, b = self.ends[e]
        if v == a:
            return b
        if v == b:
            return a
        raise ValueError(f"{v!r} is not an endpoint of {e!r}")

    def degree(self, v) -> int:
        return len(self.incident[v])

    def canonical(self, e) -> DirectedEdge:
        u, v = self.ends[e]
        return DirectedEdge(e, u, v)

    def directed(self, e, tail) -> DirectedEdge:
        return DirectedEdge(e, tail, self.other(e, tail))

    def directed_edges(self):
        for e in self.edges:
            u, v = self.ends[e]
            yield DirectedEdge(e, u, v)
            yield DirectedEdge(e, v, u)

    def cw_succ(self, v, e):
        """Clockwise successor of ``e`` at ``v``."""
        pos = self._rot_pos[v][e]
        rot = self.rotation[v]
        return rot[(pos + 1) % len(rot)]

    def ccw_succ(self, v, e):
        pos = self._rot_pos[v][e]
        rot = self.rotation[v]
        return rot[(pos - 1) % len(rot)]

    @property
    def boundary_vertices(self) -> frozenset:
        vs = set()
        for de in self.pinned.values():
            vs.update((de.tail, de.head))
        return frozenset(vs)

    def with_pins(self, pinned) -> "MultiGraph":
        return MultiGraph(self.vertices, self.edge_triples(), self.rotation, pinned)

    def edge_triples(self):
        return [(e, *self.ends[e]) for e in self.edges]

    def subgraph(self, edges) -> "MultiGraph":
        """Spanning subgraph on ``edges``; the rotation is restricted."""
        keep = set(edges)
        rot = None
        if self.rotation is not None:
            rot = {v: [e for e in self.rotation[v] if e in keep] for v in self.vertices}
        used = {v for e in keep for v in self.ends[e]}
        verts = [v for v in self.vertices if v in used] or [self.vertices[0]]
        if rot is not None:
            rot = {v: rot[v] for v in verts}
        pins = {e: (d.tail, d.head) for e, d in self.pinned.items() if e in keep}
        return MultiGraph(verts, [(e, *self.ends[e]) for e in self.edges if e in keep], rot, pins)

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.ends == other.ends
            and self.rotation == other.rotation
            and self.pinned == other.pinned
        )

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"MultiGraph(|V|={self.n_vertices}, |E|={self.n_edges}, embedded={self.rotation is not None})"

    def to_dict(self) -> dict:
        out = {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "ends": list(self.ends[e])} for e in self.edges],
        }
        if self.rotation is not None:
            out["rotation"] = {str(v): list(self.rotation[v]) for v in self.vertices}
        if self.pinned:
            out["pinned"] = [
                {"edge": e, "tail": d.tail, "head": d.head}
                for e, d in sorted(self.pinned.items(), key=lambda kv: order_key(kv[0]))
            ]
        return out


def build_graph(data: Mapping) -> MultiGraph:
    """Build a validated graph from the JSON-shaped mapping.

    Rotation keys may be the vertex ids themselves or their ``str`` forms, since
    JSON object keys are always strings.
    """
    vertices = list(data["vertices"])
    edges = [(d["id"], d["ends"][0], d["ends"][1]) for d in data["edges"]]
    rotation = None
    if data.get("rotation") is not None:
        by_str = {str(v): v for v in vertices}
        rotation = {}
        for key, cyc in data["rotation"].items():
            v = key if key in by_str.values() else by_str.get(str(key))
            if v is None:
                raise BadRotation(f"rotation lists unknown vertex {key!r}")
            rotation[v] = list(cyc)
    pinned = None
    if data.get("pinned"):
        pinned = {d["edge"]: (d["tail"], d["head"]) for d in data["pinned"]}
    return MultiGraph(vertices, edges, rotation, pinned)


@dataclass(frozen=True)
class Face:
    id: int
    boundary: tuple  # DirectedEdges, face on the left of each

    @property
    def degree(self) -> int:
        return len(self.boundary)

    @property
    def vertices(self) -> tuple:
        return tuple(d.tail for d in self.boundary)

    @property
    def edges(self) -> tuple:
        return tuple(d.edge for d in self.boundary)

    @property
    def is_simple(self) -> bool:
        vs = self.vertices
        return len(set(vs)) == len(vs)


class Embedding:
    """Faces of a rotation system, with the dart-to-face map."""

    def __init__(self, graph: MultiGraph, surface: str = "sphere"):
        if graph.rotation is None:
            raise BadRotation("graph has no rotation system")
        self.graph = graph
        left = {}
        faces = []
        for e in graph.edges:
            u, v = graph.ends[e]
            for tail, head in ((u, v), (v, u)):
                if (e, tail) in left:
                    continue
                fid = len(faces)
                bnd = []
                cur = DirectedEdge(e, tail, head)
                while (cur.edge, cur.tail) not in left:
                    left[(cur.edge, cur.tail)] = fid
                    bnd.append(cur)
                    nxt = graph.cw_succ(cur.head, cur.edge)
                    cur = graph.directed(nxt, cur.head)
                faces.append(Face(fid, tuple(bnd)))
        if graph.n_edges == 0:
            faces.append(Face(0, ()))
        self.faces = tuple(faces)
        self.left = left
        self.euler = graph.n_vertices - graph.n_edges + len(faces)
        want = {"sphere": 2, "torus": 0}[surface]
        if self.euler != want:
            raise NotSphere(
                f"V-E+F = {self.euler}, expected {want} for a {surface} embedding"
            )
        self.surface = surface

    def left_face(self, de: DirectedEdge) -> int:
        return self.left[(de.edge, de.tail)]

    def right_face(self, de: DirectedEdge) -> int:
        return self.left[(de.edge, de.head)]

    def angle_face(self, v, e) -> int:
        """Face swept when turning clockwise at ``v`` from ``e`` to its successor."""
        return self.left[(e, self.graph.other(e, v))]

    def face_containing(self, de: DirectedEdge) -> Face:
        return self.faces[self.left_face(de)]


def embedding(graph: MultiGraph, surface: str = "sphere") -> Embedding:
    key = ("embedding", surface)
    if key not in graph._cache:
        graph._cache[key] = Embedding(graph, surface)
    return graph._cache[key]


def trace_faces(graph: MultiGraph, surface: str = "sphere") -> list:
    return list(embedding(graph, surface).faces)


def dual_graph(graph: MultiGraph, surface: str = "sphere", drop_loops: bool = False):
    """Dual multigraph and the edge correspondence ``e -> e_perp``.

    Dual vertices are face ids; the dual edge keeps the primal edge id and runs
    from the face left of the primal canonical dart to the face on its right.
    A primal bridge gives a dual self-loop: it raises :class:`SelfLoop` unless
    ``drop_loops`` is set, in which case bridges get no dual edge.
    """
    emb = embedding(graph, surface)
    triples = []
    for e in graph.edges:
        d = graph.canonical(e)
        a, b = emb.left_face(d), emb.right_face(d)
        if a == b and drop_loops:
            continue
        triples.append((e, a, b))
    kept = {t[0] for t in triples}
    rotation = {f.id: [e for e in reversed(f.edges) if e in kept] for f in emb.faces}
    dual = MultiGraph([f.id for f in emb.faces], triples, rotation)
    return dual, {e: e for e in kept}


@dataclass(frozen=True)
class CycleBasis:
    cycles: tuple  # each a tuple of DirectedEdges closing on itself
    tree_edges: frozenset

    def __len__(self):
        return len(self.cycles)


def spanning_tree_dfs(graph: MultiGraph, root=None):
    """Lowest-id DFS tree: returns (parent_edge, order) with parent_edge[root] = None."""
    root = graph.vertices[0] if root is None else root
    parent = {root: None}
    order = [root]
    stack = [(root, iter(graph.incident[root]))]
    while stack:
        v, it = stack[-1]
        for e in it:
            w = graph.other(e, v)
            if w not in parent:
                parent[w] = e
                order.append(w)
                stack.append((w, iter(graph.incident[w])))
                break
        else:
            stack.pop()
    return parent, order


def _tree_path(graph, parent, a, b):
    """Directed path a -> b inside a rooted tree given by parent edges."""
    def up(x):
        chain = [x]
        while parent[x] is not None:
            x = graph.other(parent[x], x)
            chain.append(x)
        return chain

    ua, ub = up(a), up(b)
    sb = set(ub)
    lca = next(x for x in ua if x in sb)
    path = []
    x = a
    while x != lca:
        e = parent[x]
        y = graph.other(e, x)
        path.append(DirectedEdge(e, x, y))
        x = y
    down = []
    x = b
    while x != lca:
        e = parent[x]
        y = graph.other(e, x)
        down.append(DirectedEdge(e, y, x))
        x = y
    return path + down[::-1]


def cycle_basis(graph: MultiGraph) -> CycleBasis:
    """Fundamental cycles of the lowest-id DFS tree, one per non-tree edge."""
    parent, _ = spanning_tree_dfs(graph)
    tree = frozenset(e for e in parent.values() if e is not None)
    cycles = []
    for e in graph.edges:
        if e in tree:
            continue
        d = graph.canonical(e)
        cycles.append((d, *_tree_path(graph, parent, d.head, d.tail)))
    return CycleBasis(tuple(cycles), tree)


def accessibility_partition(r) -> tuple:
    """Strongly connected components of an orientation, sorted by least vertex."""
    g = r.graph
    dg = nx.DiGraph()
    dg.add_nodes_from(g.vertices)
    dg.add_edges_from((d.tail, d.head) for d in r)
    comps = [frozenset(c) for c in nx.strongly_connected_components(dg)]
    return tuple(sorted(comps, key=lambda c: min(g.vindex[v] for v in c)))


def bipartite_coloring(graph: MultiGraph) -> dict:
    """Proper 2-colouring with the lowest vertex black."""
    root = graph.vertices[0]
    color = {root: BLACK}
    parent = {root: None}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in graph.incident[v]:
            w = graph.other(e, v)
            if w not in color:
                color[w] = WHITE if color[v] == BLACK else BLACK
                parent[w] = v
                queue.append(w)
            elif color[w] == color[v]:
                raise NotBipartite(
                    f"odd cycle through edge {e!r}", _odd_cycle(parent, v, w)
                )
    return color


def _odd_cycle(parent, v, w):
    def up(x):
        out = [x]
        while parent[x] is not None:
            x = parent[x]
            out.append(x)
        return out

    pv, pw = up(v), up(w)
    sw = set(pw)
    lca = next(x for x in pv if x in sw)
    left = pv[: pv.index(lca) + 1]
    right = pw[: pw.index(lca)]
    return left + right[::-1]


def is_isomorphic_embedded(g: MultiGraph, h: MultiGraph, edge_map: Mapping | None = None) -> bool:
    """Whether ``h`` is ``g`` up to vertex renaming, under the given edge map.

    Rotations, when present, are compared as cyclic sequences.  Vertex images
    are searched by backtracking, which only branches when parallel edges
    leave the endpoint ambiguous.
    """
    edge_map = edge_map or {e: e for e in g.edges}
    if set(edge_map) != set(g.edges) or set(edge_map.values()) != set(h.edges):
        return False
    if g.n_vertices != h.n_vertices or (g.rotation is None) != (h.rotation is None):
        return False

    def candidates(v):
        images = set(h.vertices)
        for e in g.incident[v]:
            images &= set(h.ends[edge_map[e]])
        return sorted(images, key=order_key)

    def rotation_ok(v, x):
        if g.rotation is None:
            return True
        a = [edge_map[e] for e in g.rotation[v]]
        b = list(h.rotation[x])
        return len(a) == len(b) and (not a or any(b[i:] + b[:i] == a for i in range(len(b))))

    verts = list(g.vertices)

    def search(i, vmap, used):
        if i == len(verts):
            return all(
                {vmap[x] for x in g.ends[e]} == set(h.ends[edge_map[e]]) for e in g.edges
            )
        v = verts[i]
        for x in candidates(v):
            if x in used or h.degree(x) != g.degree(v) or not rotation_ok(v, x):
                continue
            vmap[v] = x
            used.add(x)
            if search(i + 1, vmap, used):
                return True
            used.discard(x)
            del vmap[v]
        return False

    return search(0, {}, set())


def grid_graph(rows: int, cols: int, embedded: bool = True) -> MultiGraph:
    """Plane grid graph with ``rows x cols`` vertices, id ``r * cols + c``.

    Row 0 is the top row.  Horizontal edge ids come first (row-major), then
    vertical ones.
    """
    vid = lambda r, c: r * cols + c  # noqa: E731
    triples = []
    hid, vid_e = {}, {}
    for r in range(rows):
        for c in range(cols - 1):
            hid[(r, c)] = len(triples)
            triples.append((len(triples), vid(r, c), vid(r, c + 1)))
    for r in range(rows - 1):
        for c in range(cols):
            vid_e[(r, c)] = len(triples)
            triples.append((len(triples), vid(r, c), vid(r + 1, c)))
    rotation = None
    if embedded:
        rotation = {}
        for r in range(rows):
            for c in range(cols):
                cyc = []
                if r > 0:
                    cyc.append(vid_e[(r - 1, c)])  # up
                if c < cols - 1:
                    cyc.append(hid[(r, c)])  # right
                if r < rows - 1:
                    cyc.append(vid_e[(r, c)])  # down
                if c > 0:
                    cyc.append(hid[(r, c - 1)])  # left
                rotation[vid(r, c)] = cyc
    return MultiGraph(range(rows * cols), triples, rotation)


def to_networkx(graph: MultiGraph) -> nx.MultiGraph:
    out = nx.MultiGraph()
    out.add_nodes_from(graph.vertices)
    for e in graph.edges:
        out.add_edge(*graph.ends[e], key=e)
    return out


def connected_components(vertices: Iterable, edges: Iterable) -> list:
    """Components of an ad-hoc graph given as vertex ids and ``(u, v)`` pairs."""
    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from(edges)
    return [set(c) for c in nx.connected_components(g)]
