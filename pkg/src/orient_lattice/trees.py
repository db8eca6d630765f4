"""Spanning trees of embedded graphs ordered by swinging moves.

A tree is stored as a frozenset of edge ids.  The order comes from perfect
matchings of the vertex-edge-face incidence graph with the nodes of ``vstar``
and ``fstar`` removed; the direct swing moves are checked against it.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    NotIncident,
    NotOuterHamiltonian,
    NotPerfectMatching,
    NotPivotal,
    NotPivotal4,
    NotSpanningTree,
    TooLarge,
)
from .graph import BLACK, WHITE, DirectedEdge, MultiGraph, connected_components, embedding
from .matchings import DFactorLattice
from .orientations import DEFAULT_MAX_ELEMENTS
from .poset import HasseDiagram, covers_from_leq_matrix, graded_rank, transitive_closure


def tree_key(graph: MultiGraph, t) -> tuple:
    return tuple(sorted(graph.eindex[e] for e in t))


def is_spanning_tree(graph: MultiGraph, t) -> bool:
    t = list(t)
    if len(t) != graph.n_vertices - 1 or not set(t) <= set(graph.ends):
        return False
    comps = connected_components(graph.vertices, [graph.ends[e] for e in t])
    return len(comps) == 1


def spanning_trees(graph: MultiGraph, limit: int = DEFAULT_MAX_ELEMENTS) -> list:
    """Every spanning tree, by filtering edge subsets of size |V| - 1."""
    out = []
    for combo in itertools.combinations(graph.edges, graph.n_vertices - 1):
        if is_spanning_tree(graph, combo):
            out.append(frozenset(combo))
            if len(out) > limit:
                raise TooLarge(f"more than {limit} spanning trees")
    return out


def _root_tree(graph: MultiGraph, t, root) -> dict:
    """Parent dart ``v -> parent`` for every vertex except ``root``."""
    parent = {}
    seen = {root}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for e in graph.incident[x]:
            if e not in t:
                continue
            y = graph.other(e, x)
            if y not in seen:
                seen.add(y)
                parent[y] = DirectedEdge(e, y, x)
                queue.append(y)
    return parent


@dataclass(frozen=True)
class Angle:
    vertex: object
    edge: object
    next_edge: object  # clockwise successor of ``edge`` at ``vertex``
    face: int


@dataclass(frozen=True)
class ArborescencePair:
    tree: frozenset
    primal: dict  # vertex -> dart toward vstar
    dual: dict  # face -> dual dart toward fstar


class EmbeddedTrees:
    """Spanning-tree machinery for a connected graph on the sphere."""

    def __init__(self, graph: MultiGraph, vstar=None, fstar=None):
        self.graph = graph
        self.emb = embedding(graph, "sphere")
        self.vstar = graph.vertices[0] if vstar is None else vstar
        if fstar is None:
            # the face left of the first dart leaving vstar
            e = graph.rotation[self.vstar][0]
            fstar = self.emb.left_face(graph.directed(e, self.vstar))
        elif not isinstance(fstar, int):
            e, tail = fstar
            fstar = self.emb.left_face(graph.directed(e, tail))
        self.fstar = fstar
        if self.vstar not in self.emb.faces[fstar].vertices:
            raise NotIncident(f"vertex {self.vstar!r} is not on face {fstar}")
        # dual adjacency: face -> [(edge, other face)]
        self.face_adj = {f.id: [] for f in self.emb.faces}
        for e in graph.edges:
            d = graph.canonical(e)
            a, b = self.emb.left_face(d), self.emb.right_face(d)
            if a != b:
                self.face_adj[a].append((e, b))
                self.face_adj[b].append((e, a))

    def key(self, t) -> tuple:
        return tree_key(self.graph, t)

    # --- arborescences -----------------------------------------------------
    def arborescence_pair(self, t) -> ArborescencePair:
        t = frozenset(t)
        if not is_spanning_tree(self.graph, t):
            raise NotSpanningTree("edge set is not a spanning tree")
        primal = _root_tree(self.graph, t, self.vstar)
        dual = {}
        seen = {self.fstar}
        queue = deque([self.fstar])
        while queue:
            f = queue.popleft()
            for e, h in self.face_adj[f]:
                if e in t or h in seen:
                    continue
                seen.add(h)
                dual[h] = DirectedEdge(e, h, f)
                queue.append(h)
        n_faces = len(self.emb.faces)
        if len(seen) != n_faces or len(dual) != n_faces - 1:
            raise AssertionError("complement of a spanning tree must dualize to a spanning tree")
        assert len(primal) == self.graph.n_vertices - 1
        return ArborescencePair(t, primal, dual)

    @cached_property
    def angles(self) -> tuple:
        out = []
        g = self.graph
        for v in g.vertices:
            for e in g.rotation[v]:
                nxt = g.cw_succ(v, e)
                if nxt != e:
                    out.append(Angle(v, e, nxt, self.emb.angle_face(v, e)))
        return tuple(out)

    def angle(self, v, e) -> Angle:
        nxt = self.graph.cw_succ(v, e)
        return Angle(v, e, nxt, self.emb.angle_face(v, e))

    # --- pivotal angles -------------------------------------------------------
    def is_pivotal(self, p: ArborescencePair, a: Angle) -> bool:
        """Membership test: ``edge`` is the parent dart of the vertex and
        ``next_edge`` carries the dual parent dart of the face."""
        par = p.primal.get(a.vertex)
        dpar = p.dual.get(a.face)
        return par is not None and par.edge == a.edge and dpar is not None and dpar.edge == a.next_edge

    def pivotal_by_conditions(self, t, a: Angle, use_face_condition: bool = True) -> bool:
        """The five defining conditions, checked literally."""
        g = self.graph
        t = frozenset(t)
        if not (a.edge in t and a.next_edge not in t):
            return False
        t2 = t ^ {a.edge, a.next_edge}
        if not is_spanning_tree(g, t2):
            return False
        if a.vertex == self.vstar:
            return False
        if _root_tree(g, t, self.vstar)[a.vertex].edge != a.edge:
            return False
        if _root_tree(g, t2, self.vstar)[a.vertex].edge != a.next_edge:
            return False
        if not use_face_condition:
            return True
        cycle = self._tree_cycle(t, a)
        return not self._faces_connected_avoiding(a.face, self.fstar, cycle)

    def _tree_cycle(self, t, a: Angle) -> frozenset:
        """Edges of the unique cycle in T + next_edge."""
        g = self.graph
        u, w = g.ends[a.next_edge]
        par = _root_tree(g, t, u)
        cyc = {a.next_edge}
        x = w
        while x != u:
            d = par[x]
            cyc.add(d.edge)
            x = d.head
        return frozenset(cyc)

    def _faces_connected_avoiding(self, f, h, cut) -> bool:
        seen = {f}
        queue = deque([f])
        while queue:
            x = queue.popleft()
            if x == h:
                return True
            for e, y in self.face_adj[x]:
                if e not in cut and y not in seen:
                    seen.add(y)
                    queue.append(y)
        return False

    def pivotal_angles(self, t) -> list:
        p = self.arborescence_pair(t)
        return [a for a in self.angles if self.is_pivotal(p, a)]

    def swing(self, t, a: Angle, direction: str = "down") -> frozenset:
        t = frozenset(t)
        if direction == "down":
            if not self.is_pivotal(self.arborescence_pair(t), a):
                raise NotPivotal(f"angle at {a.vertex!r} between {a.edge!r} and {a.next_edge!r} is not positively pivotal")
            return t ^ {a.edge, a.next_edge}
        t2 = t ^ {a.edge, a.next_edge}
        if not (a.next_edge in t and a.edge not in t and is_spanning_tree(self.graph, t2)
                and self.is_pivotal(self.arborescence_pair(t2), a)):
            raise NotPivotal(f"angle at {a.vertex!r} between {a.edge!r} and {a.next_edge!r} is not negatively pivotal")
        return t2

    def swing_down(self, t, a: Angle) -> frozenset:
        return self.swing(t, a, "down")

    def swing_up(self, t, a: Angle) -> frozenset:
        return self.swing(t, a, "up")

    def longest_swing_run(self, t, v) -> int:
        """Most consecutive swing-downs at ``v`` starting from ``t``."""
        best = 0
        stack = [(frozenset(t), 0)]
        seen = set()
        while stack:
            s, k = stack.pop()
            best = max(best, k)
            for a in self.pivotal_angles(s):
                if a.vertex == v:
                    nxt = s ^ {a.edge, a.next_edge}
                    if (nxt, k + 1) not in seen:
                        seen.add((nxt, k + 1))
                        stack.append((nxt, k + 1))
        return best


class HasseGraph:
    """Vertex-edge-face incidence graph without the nodes of vstar and fstar.

    Nodes are ``("v", v)``, ``("e", e)``, ``("f", f)``; edge nodes are black.
    """

    def __init__(self, trees: EmbeddedTrees):
        self.trees = trees
        g, emb = trees.graph, trees.emb
        edges = []
        rotation = {}
        for e in g.edges:
            for i, v in enumerate(g.ends[e]):
                edges.append((("ve", e, i), ("e", e), ("v", v)))
            d = g.canonical(e)
            for side, f in enumerate((emb.left_face(d), emb.right_face(d))):
                edges.append((("fe", e, side), ("e", e), ("f", f)))
            rotation[("e", e)] = [("ve", e, 1), ("fe", e, 1), ("ve", e, 0), ("fe", e, 0)]
        for v in g.vertices:
            rotation[("v", v)] = [("ve", e, g.ends[e].index(v)) for e in g.rotation[v]]
        for f in emb.faces:
            rotation[("f", f.id)] = [
                ("fe", d.edge, 0 if d == g.canonical(d.edge) else 1) for d in reversed(f.boundary)
            ]
        full = MultiGraph(list(rotation), edges, rotation)
        if embedding(full, "sphere").euler != 2:
            raise AssertionError("incidence graph must be planar")
        self.full = full
        drop = {("v", trees.vstar), ("f", trees.fstar)}
        keep = [eid for eid in full.edges if not set(full.ends[eid]) & drop]
        self.graph = full.subgraph(keep)
        self.coloring = {x: BLACK if x[0] == "e" else WHITE for x in self.graph.vertices}
        hemb = embedding(self.graph, "sphere")
        self.quad = {}
        for a in trees.angles:
            if a.vertex == trees.vstar or a.face == trees.fstar:
                continue
            i = g.ends[a.edge].index(a.vertex)
            hf = hemb.left_face(DirectedEdge(("ve", a.edge, i), ("e", a.edge), ("v", a.vertex)))
            face = hemb.faces[hf]
            assert face.degree == 4, "angle faces of the incidence graph are quadrilaterals"
            self.quad[(a.vertex, a.edge)] = hf
        rest = set(range(len(hemb.faces))) - set(self.quad.values())
        if len(rest) != 1:
            raise AssertionError(f"expected one merged face, found {len(rest)}")
        self.fstar = rest.pop()

    def temperley(self, p: ArborescencePair) -> frozenset:
        g = self.trees.graph
        m = set()
        for v, d in p.primal.items():
            m.add(("ve", d.edge, g.ends[d.edge].index(v)))
        for f, d in p.dual.items():
            side = 0 if self.trees.emb.left_face(g.canonical(d.edge)) == f else 1
            m.add(("fe", d.edge, side))
        return frozenset(m)

    def temperley_inv(self, m) -> frozenset:
        m = frozenset(m)
        touched = [x for eid in m for x in self.graph.ends[eid]]
        if len(touched) != len(set(touched)) or set(touched) != set(self.graph.vertices):
            raise NotPerfectMatching("not a perfect matching of the incidence graph")
        t = frozenset(eid[1] for eid in m if eid[0] == "ve")
        if not is_spanning_tree(self.trees.graph, t):
            raise AssertionError("matching does not come from a spanning tree")
        return t


class TreeLattice:
    """Spanning trees of an embedded graph with the swing order."""

    def __init__(self, graph: MultiGraph, vstar=None, fstar=None):
        self.trees = EmbeddedTrees(graph, vstar, fstar)
        self.graph = graph
        self.h = HasseGraph(self.trees)
        self.matchings = DFactorLattice(self.h.graph, fstar=self.h.fstar, coloring=self.h.coloring)
        direct = sorted(spanning_trees(graph), key=self.trees.key)
        via = sorted((self.h.temperley_inv(m) for m in self.matchings.factors), key=self.trees.key)
        if direct != via:
            raise AssertionError(f"{len(direct)} spanning trees but {len(via)} matchings")
        self.elements = direct
        self._index = {self.trees.key(t): i for i, t in enumerate(direct)}

    def __len__(self):
        return len(self.elements)

    def index(self, t) -> int:
        return self._index[self.trees.key(t)]

    def matching(self, t) -> frozenset:
        return self.h.temperley(self.trees.arborescence_pair(t))

    def swing_covers(self) -> frozenset:
        covers = set()
        for i, t in enumerate(self.elements):
            for a in self.trees.pivotal_angles(t):
                covers.add((i, self.index(t ^ {a.edge, a.next_edge})))
        return frozenset(covers)

    def hasse_diagram(self) -> HasseDiagram:
        """Swing-down covers, asserted equal to the matching lattice's twist covers."""
        covers = self.swing_covers()
        mh = self.matchings.hasse_diagram()
        pulled = frozenset(
            (self.index(self.h.temperley_inv(mh.elements[a])), self.index(self.h.temperley_inv(mh.elements[b])))
            for a, b in mh.covers
        )
        if pulled != covers:
            raise AssertionError("swing covers differ from twist covers of the incidence graph")
        rank = [0] * len(self.elements)
        for m, r in zip(mh.elements, mh.rank):
            rank[self.index(self.h.temperley_inv(m))] = r
        return HasseDiagram(tuple(self.elements), covers, tuple(rank))

    def compare(self, s, t) -> str:
        return self.matchings.compare(self.matching(s), self.matching(t))

    def meet(self, s, t) -> frozenset:
        return self.h.temperley_inv(self.matchings.meet(self.matching(s), self.matching(t)))

    def join(self, s, t) -> frozenset:
        return self.h.temperley_inv(self.matchings.join(self.matching(s), self.matching(t)))

    @property
    def bottom(self) -> frozenset:
        return self.h.temperley_inv(self.matchings.bottom)

    @property
    def top(self) -> frozenset:
        return self.h.temperley_inv(self.matchings.top)

    def join_irreducible_angles(self) -> dict:
        """Join-irreducible tree -> the angle of its unique swing-down."""
        out = {}
        for t in self.elements:
            piv = self.trees.pivotal_angles(t)
            if len(piv) == 1:
                out[t] = (piv[0].vertex, piv[0].edge)
        return out

    def angle_poset(self) -> HasseDiagram:
        """Poset of angles drawn from arrows, checked against the join-irreducibles.

        An arrow ``a -> b`` puts ``b`` below ``a``.
        """
        angles, arrows = angle_poset(self.trees)
        idx = {a: i for i, a in enumerate(angles)}
        leq = transitive_closure(len(angles), [(idx[b], idx[a]) for a, b in arrows])
        hp = HasseDiagram(tuple(angles), covers_from_leq_matrix(leq))
        ji = self.join_irreducible_angles()
        assert sorted(ji.values()) == sorted(angles), "angles differ from join-irreducibles"
        lat = self.hasse_diagram().leq_matrix()
        for s, a in ji.items():
            for t, b in ji.items():
                assert lat[self.index(s), self.index(t)] == leq[idx[a], idx[b]], \
                    "arrow order differs from lattice order"
        return hp


# --- outer-Hamiltonian drawings --------------------------------------------------

def outer_cycle(trees: EmbeddedTrees) -> list:
    """Boundary darts of ``fstar``, starting with the one leaving ``vstar``."""
    bnd = list(trees.emb.faces[trees.fstar].boundary)
    g = trees.graph
    if len(bnd) != g.n_vertices or len(set(d.tail for d in bnd)) != g.n_vertices:
        raise NotOuterHamiltonian("the special face is not bounded by a Hamiltonian cycle")
    k = next(i for i, d in enumerate(bnd) if d.tail == trees.vstar)
    return bnd[k:] + bnd[:k]


def angle_poset(trees: EmbeddedTrees):
    """Order on interior angles away from ``vstar`` built from clockwise arrows.

    Returns ``(angles, arrows)``: angles as ``(vertex, edge)`` pairs and arrows
    as ``(from, to)`` pairs, each arrow pointing to the smaller angle.
    """
    g, emb = trees.graph, trees.emb
    cyc = outer_cycle(trees)
    last = cyc[-1].edge  # joins vstar to its counterclockwise neighbour
    # modified dual tree rooted at fstar
    parent_edge = {trees.fstar: None}
    queue = deque([trees.fstar])
    while queue:
        f = queue.popleft()
        for e, h in trees.face_adj[f]:
            if f == trees.fstar or h == trees.fstar:
                if e != last:
                    continue
            if h not in parent_edge:
                parent_edge[h] = e
                queue.append(h)
    if len(parent_edge) != len(emb.faces):
        raise NotOuterHamiltonian("modified dual is not a spanning tree")
    angles = [
        (a.vertex, a.edge) for a in trees.angles
        if a.vertex != trees.vstar and a.face != trees.fstar
    ]
    aset = set(angles)
    arrows = set()
    for v, e in angles:
        nxt = (v, g.cw_succ(v, e))
        if nxt in aset:
            arrows.add(((v, e), nxt))
    for f in emb.faces:
        if f.id == trees.fstar:
            continue
        bnd = f.boundary
        for i, d in enumerate(bnd):
            if d.edge == parent_edge[f.id]:
                continue
            prev = bnd[i - 1]
            src, dst = (d.head, d.edge), (prev.head, prev.edge)
            if src in aset and dst in aset:
                arrows.add((src, dst))
    return sorted(angles, key=lambda x: (g.vindex[x[0]], g.eindex[x[1]])), frozenset(arrows)


# --- outer-Hamiltonian graphs with crossings -------------------------------------------

class CrossingTrees:
    """Swing moves on K_n-style drawings: vertices on a convex polygon, counterclockwise.

    Only the cyclic order of edges at each vertex is used; no faces exist.
    """

    def __init__(self, graph: MultiGraph, vstar=0):
        self.graph = graph
        self.vstar = vstar
        n = graph.n_vertices
        self.n = n
        self.elements = sorted(spanning_trees(graph), key=lambda t: tree_key(graph, t))
        self._index = {tree_key(graph, t): i for i, t in enumerate(self.elements)}
        self.pos = {v: i for i, v in enumerate(graph.vertices)}

    def interior_angles(self):
        """(v, e, e') with e' the clockwise successor, skipping the outer angle."""
        g = self.graph
        out = []
        for v in g.vertices:
            if v == self.vstar:
                continue
            nxt_on_polygon = g.vertices[(self.pos[v] + 1) % self.n]
            for e in g.rotation[v]:
                if g.other(e, v) == nxt_on_polygon:
                    continue
                out.append((v, e, g.cw_succ(v, e)))
        return out

    def swing(self, t, angle) -> frozenset:
        v, e, e2 = angle
        g = self.graph
        t = frozenset(t)
        if not (e in t and e2 not in t):
            raise NotPivotal4("first edge must be in the tree and the second outside")
        t2 = t ^ {e, e2}
        if not is_spanning_tree(g, t2):
            raise NotPivotal4("exchange does not give a spanning tree")
        if _root_tree(g, t, self.vstar)[v].edge != e or _root_tree(g, t2, self.vstar)[v].edge != e2:
            raise NotPivotal4("the exchanged edges are not on the path to the root")
        return t2

    def covers(self) -> frozenset:
        covers = set()
        g = self.graph
        angles = self.interior_angles()
        for i, t in enumerate(self.elements):
            par = _root_tree(g, t, self.vstar)
            for v, e, e2 in angles:
                if par[v].edge != e or e2 in t:
                    continue
                t2 = t ^ {e, e2}
                if not is_spanning_tree(g, t2):
                    continue
                if _root_tree(g, t2, self.vstar)[v].edge == e2:
                    covers.add((i, self._index[tree_key(g, t2)]))
        return frozenset(covers)

    def hasse_diagram(self) -> HasseDiagram:
        covers = self.covers()
        rank = graded_rank(len(self.elements), covers)
        return HasseDiagram(tuple(self.elements), covers, tuple(rank))

    def relation_is_covering(self) -> bool:
        """Whether every swing is a cover of the order it generates."""
        covers = self.covers()
        leq = transitive_closure(len(self.elements), [(lo, up) for up, lo in covers])
        return covers_from_leq_matrix(leq) == covers


def kn_graph(n: int) -> MultiGraph:
    """K_n with vertices counterclockwise on a polygon; clockwise order at v runs v-1, v-2, ..."""
    edges = [(k, i, j) for k, (i, j) in enumerate(itertools.combinations(range(n), 2))]
    eid = {frozenset((i, j)): k for k, i, j in edges}
    rotation = {v: [eid[frozenset((v, (v - s) % n))] for s in range(1, n)] for v in range(n)}
    return MultiGraph(range(n), edges, rotation)

