"""d-factors of embedded bipartite graphs and their twist lattice.

A d-factor is stored as a frozenset of edge ids.  Order structure comes from
the dual graph: each d-factor ``M`` gives an orientation of the dual in which
exactly the duals of edges of ``M`` run against the standard orientation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    IsFstar,
    NoDFactor,
    NotBipartite,
    NotAlternating,
    TooLarge,
    WrongDegrees,
)
from .graph import (
    BLACK,
    DirectedEdge,
    MultiGraph,
    bipartite_coloring,
    dual_graph,
    embedding,
    spanning_tree_dfs,
)
from .orientations import (
    DEFAULT_MAX_ELEMENTS,
    Orientation,
    OrientationLattice,
    circulation_around,
)
from .poset import HasseDiagram


def dfactor_key(graph: MultiGraph, m) -> tuple:
    return tuple(sorted(graph.eindex[e] for e in m))


def check_dfactor(graph: MultiGraph, degrees: dict, m) -> None:
    count = {v: 0 for v in graph.vertices}
    for e in m:
        if e not in graph.ends:
            raise WrongDegrees(f"{e!r} is not an edge")
        for v in graph.ends[e]:
            count[v] += 1
    bad = [v for v in graph.vertices if count[v] != degrees[v]]
    if bad:
        v = bad[0]
        raise WrongDegrees(f"vertex {v!r} meets {count[v]} edges, wants {degrees[v]}")


def _degree_spec(graph: MultiGraph, degrees) -> dict:
    if degrees is None:
        return {v: 1 for v in graph.vertices}
    if isinstance(degrees, int):
        return {v: degrees for v in graph.vertices}
    d = {v: int(degrees[v]) for v in graph.vertices}
    for v, k in d.items():
        if k < 0 or k > graph.degree(v):
            raise WrongDegrees(f"d({v!r}) = {k} is outside 0..{graph.degree(v)}")
    return d


def enumerate_dfactors(graph: MultiGraph, degrees=None, limit: int = DEFAULT_MAX_ELEMENTS) -> list:
    """All d-factors by backtracking over edges in canonical order."""
    d = _degree_spec(graph, degrees)
    need = dict(d)
    # edges still undecided at each vertex
    left = {v: graph.degree(v) for v in graph.vertices}
    chosen = []
    out = []

    def rec(i):
        if i == graph.n_edges:
            if all(k == 0 for k in need.values()):
                out.append(frozenset(chosen))
                if len(out) > limit:
                    raise TooLarge(f"more than {limit} d-factors")
            return
        e = graph.edges[i]
        u, v = graph.ends[e]
        left[u] -= 1
        left[v] -= 1
        if need[u] > 0 and need[v] > 0:
            need[u] -= 1
            need[v] -= 1
            if need[u] <= left[u] and need[v] <= left[v]:
                chosen.append(e)
                rec(i + 1)
                chosen.pop()
            need[u] += 1
            need[v] += 1
        if need[u] <= left[u] and need[v] <= left[v]:
            rec(i + 1)
        left[u] += 1
        left[v] += 1

    if all(need[v] <= left[v] for v in graph.vertices):
        rec(0)
    return sorted(out, key=lambda m: dfactor_key(graph, m))


@dataclass(frozen=True)
class PruneResult:
    kept: tuple
    degrees: dict  # d' on the vertices touched by kept edges
    forced: frozenset
    impossible: frozenset
    graph: MultiGraph | None  # the pruned subgraph when it is connected


def prune_live(graph: MultiGraph, degrees=None) -> PruneResult:
    """Drop edges lying in no d-factor and contract edges lying in all of them."""
    d = _degree_spec(graph, degrees)
    _check_balance(graph, d)
    factors = enumerate_dfactors(graph, d)
    if not factors:
        raise NoDFactor("the graph has no d-factor")
    inall = frozenset.intersection(*factors)
    inany = frozenset.union(*factors)
    impossible = frozenset(graph.edges) - inany
    kept = tuple(e for e in graph.edges if e in inany and e not in inall)
    dd = dict(d)
    for e in inall:
        for v in graph.ends[e]:
            dd[v] -= 1
    sub = None
    if kept:
        try:
            sub = graph.subgraph(kept)
        except Exception:
            sub = None
    touched = {v for e in kept for v in graph.ends[e]}
    return PruneResult(kept, {v: dd[v] for v in graph.vertices if v in touched}, inall, impossible, sub)


def _check_balance(graph, d, color=None):
    color = color or bipartite_coloring(graph)
    black = sum(k for v, k in d.items() if color[v] == BLACK)
    white = sum(k for v, k in d.items() if color[v] != BLACK)
    if black != white:
        raise NoDFactor(f"degree sums differ on the two colour classes ({black} vs {white})")


class DFactorLattice:
    """d-factors of a bipartite graph on the sphere, ordered through the dual.

    ``fstar`` is a face id or a dart ``(edge, tail)`` whose left face is meant;
    by default the face of largest degree (lowest id on ties).
    """

    def __init__(self, graph: MultiGraph, degrees=None, fstar=None, surface: str = "sphere",
                 factors=None, max_elements: int = DEFAULT_MAX_ELEMENTS, coloring=None):
        self.graph = graph
        self.surface = surface
        self.degrees = _degree_spec(graph, degrees)
        self.color = bipartite_coloring(graph)
        if coloring is not None:
            flip = coloring[graph.vertices[0]] != self.color[graph.vertices[0]]
            if any((coloring[v] != self.color[v]) != flip for v in graph.vertices):
                raise NotBipartite("given colouring is not proper", None)
            self.color = dict(coloring)
        self.emb = embedding(graph, surface)
        self.max_elements = max_elements
        self.fstar = self._resolve_face(fstar)
        self.dual, _ = dual_graph(graph, surface, drop_loops=True)
        self.bridges = frozenset(e for e in graph.edges if e not in self.dual.ends)
        self.standard = Orientation.from_directed(
            self.dual, [self.standard_dart(e) for e in self.dual.edges]
        )
        _check_balance(graph, self.degrees, self.color)
        if factors is None:
            factors = enumerate_dfactors(graph, self.degrees, max_elements)
        self.factors = sorted(set(factors), key=self.key)
        if not self.factors:
            raise NoDFactor("the graph has no d-factor")
        fixed = {frozenset(m & self.bridges) for m in self.factors}
        if len(fixed) != 1:
            raise AssertionError("bridges must have the same membership in every d-factor")
        self.bridge_part = fixed.pop()

    def key(self, m) -> tuple:
        return dfactor_key(self.graph, m)

    def _resolve_face(self, fstar):
        if fstar is None:
            return max(self.emb.faces, key=lambda f: (f.degree, -f.id)).id
        if isinstance(fstar, int):
            if not 0 <= fstar < len(self.emb.faces):
                raise ValueError(f"no face {fstar}")
            return fstar
        e, tail = fstar
        return self.emb.left_face(self.graph.directed(e, tail))

    # --- the duality bijection -----------------------------------------------
    def black_dart(self, e) -> DirectedEdge:
        u, v = self.graph.ends[e]
        return DirectedEdge(e, u, v) if self.color[u] == BLACK else DirectedEdge(e, v, u)

    def standard_dart(self, e) -> DirectedEdge:
        """Dual dart crossing ``e`` from the left of its black-to-white dart to the right."""
        d = self.black_dart(e)
        return DirectedEdge(e, self.emb.left_face(d), self.emb.right_face(d))

    def orientation_of_dfactor(self, m) -> Orientation:
        m = frozenset(m)
        check_dfactor(self.graph, self.degrees, m)
        return self.standard.flipped(e for e in m if e not in self.bridges)

    def dfactor_of_orientation(self, r: Orientation) -> frozenset:
        m = frozenset(e for e in self.dual.edges if r.direction(e) != self.standard.direction(e))
        m = m | self.bridge_part
        check_dfactor(self.graph, self.degrees, m)
        return m

    def vertex_cycle(self, v) -> tuple:
        """Dual darts circling primal vertex ``v`` counterclockwise (bridges skipped)."""
        g = self.graph
        darts = []
        for e in reversed(g.rotation[v]):
            if e in self.bridges:
                continue
            a = self.emb.angle_face(v, e)
            b = self.emb.angle_face(v, g.ccw_succ(v, e))
            darts.append(DirectedEdge(e, a, b))
        return tuple(darts)

    def vertex_circulation(self, m, v) -> int:
        """Circulation of the dual orientation of ``m`` around ``v``.

        White vertices give ``deg - 2 d``, black ones the negative (counting
        non-bridge edges only).
        """
        r = self.orientation_of_dfactor(m)
        value = circulation_around(r, self.vertex_cycle(v))
        deg = sum(1 for e in self.graph.incident[v] if e not in self.bridges)
        dv = sum(1 for e in self.graph.incident[v] if e not in self.bridges and e in m)
        want = deg - 2 * dv
        if self.color[v] == BLACK:
            want = -want
        assert value == want, f"circulation {value} around {v!r}, expected {want}"
        return value

    # --- lattice through the dual --------------------------------------------
    @cached_property
    def lattice(self) -> OrientationLattice:
        ref = self.orientation_of_dfactor(self.factors[0])
        elems = [self.orientation_of_dfactor(m) for m in self.factors]
        return OrientationLattice(ref, vstar=self.fstar, elements=elems,
                                  max_elements=self.max_elements)

    @property
    def elements(self) -> list:
        return list(self.factors)

    def __len__(self):
        return len(self.factors)

    def compare(self, m, n) -> str:
        return self.lattice.compare(self.orientation_of_dfactor(m), self.orientation_of_dfactor(n))

    def meet(self, m, n) -> frozenset:
        r = self.lattice.meet(self.orientation_of_dfactor(m), self.orientation_of_dfactor(n))
        return self.dfactor_of_orientation(r)

    def join(self, m, n) -> frozenset:
        r = self.lattice.join(self.orientation_of_dfactor(m), self.orientation_of_dfactor(n))
        return self.dfactor_of_orientation(r)

    @property
    def bottom(self) -> frozenset:
        return self.dfactor_of_orientation(self.lattice.bottom)

    @property
    def top(self) -> frozenset:
        return self.dfactor_of_orientation(self.lattice.top)

    # --- faces and twists --------------------------------------------------------
    def alternating_sense(self, m, f) -> int:
        """+1 for a positive alternating face, -1 for negative, 0 otherwise.

        Positive: along the counterclockwise boundary every black-to-white dart
        lies in ``m`` and no white-to-black dart does.
        """
        darts = [d for d in self.emb.faces[f].boundary if d.edge not in self.bridges]
        if not darts:
            return 0
        pos = neg = True
        for d in darts:
            inm = d.edge in m
            bw = self.color[d.tail] == BLACK
            if inm != bw:
                pos = False
            if inm == bw:
                neg = False
        return 1 if pos else (-1 if neg else 0)

    def alternating_faces(self, m):
        pos, neg = [], []
        for f in self.emb.faces:
            s = self.alternating_sense(m, f.id)
            if s > 0:
                pos.append(f.id)
            elif s < 0:
                neg.append(f.id)
        return pos, neg

    def twist(self, m, f, direction: str = "down") -> frozenset:
        if f == self.fstar:
            raise IsFstar("twists at the special face are not allowed")
        want = 1 if direction == "down" else -1
        if self.alternating_sense(m, f) != want:
            kind = "positive" if want > 0 else "negative"
            raise NotAlternating(f"face {f} is not {kind} alternating")
        flip = {d.edge for d in self.emb.faces[f].boundary if d.edge not in self.bridges}
        return frozenset(m) ^ frozenset(flip)

    def twist_down(self, m, f) -> frozenset:
        return self.twist(m, f, "down")

    def twist_up(self, m, f) -> frozenset:
        return self.twist(m, f, "up")

    def class_moves(self, m, direction: str = "down") -> list:
        """Lattice moves at accessibility classes of the dual (several faces at once)."""
        lat = self.lattice
        r = self.orientation_of_dfactor(m)
        ids = lat.maximal_class_ids(r) if direction == "down" else lat.minimal_class_ids(r)
        return [(lat.classes[k], self.dfactor_of_orientation(lat._flip_class(r, k))) for k in ids]

    def hasse_diagram(self, check: bool = True) -> HasseDiagram:
        """Covers are class pushes; for singleton classes they are face twists."""
        lat = self.lattice
        index = {self.key(m): i for i, m in enumerate(self.factors)}
        covers = set()
        for i, m in enumerate(self.factors):
            for cls, n in self.class_moves(m, "down"):
                if len(cls) == 1:
                    (f,) = cls
                    assert self.twist(m, f, "down") == n
                covers.add((i, index[self.key(n)]))
        covers = frozenset(covers)
        if check:
            h = lat.hasse_diagram()
            pulled = frozenset(
                (index[self.key(self.dfactor_of_orientation(h.elements[a]))],
                 index[self.key(self.dfactor_of_orientation(h.elements[b]))])
                for a, b in h.covers
            )
            assert pulled == covers, "twist covers differ from the dual lattice covers"
        rank = tuple(lat.ranks[self.orientation_of_dfactor(m)] for m in self.factors)
        return HasseDiagram(tuple(self.factors), covers, rank)

    # --- face heights ------------------------------------------------------------
    def _dual_paths(self, kind: str = "bfs") -> dict:
        """Dual dart paths from ``fstar`` to every face along a spanning tree."""
        dual = self.dual
        if kind == "bfs":
            parent = {self.fstar: None}
            queue = deque([self.fstar])
            while queue:
                f = queue.popleft()
                for e in dual.incident[f]:
                    h = dual.other(e, f)
                    if h not in parent:
                        parent[h] = e
                        queue.append(h)
        else:
            parent, _ = spanning_tree_dfs(dual, self.fstar)
        paths = {}
        for f in dual.vertices:
            path = []
            x = f
            while parent[x] is not None:
                e = parent[x]
                y = dual.other(e, x)
                path.append(DirectedEdge(e, y, x))
                x = y
            paths[f] = tuple(reversed(path))
        return paths

    def _height_along(self, m, paths) -> dict:
        out = {}
        for f, path in paths.items():
            h = 0
            for d in path:
                if d.edge in m:
                    h += -1 if d == self.standard.direction(d.edge) else 1
            out[f] = h
        return out

    def face_height(self, m, paths: str = "bfs") -> dict:
        """Signed face heights: crossing an edge of ``m`` counts +1 with its
        black end on the left of the crossing, -1 with it on the right."""
        return self._height_along(m, self._dual_paths(paths))

    def face_height_offsets(self, paths: str = "bfs") -> dict:
        """``H(f) - h(f)`` for the dual height ``H``; asserted equal over all d-factors."""
        lat = self.lattice
        p = self._dual_paths(paths)
        offsets = None
        for m in self.factors:
            H = lat.height(self.orientation_of_dfactor(m))
            h = self._height_along(m, p)
            off = {f: H[f] - h[f] for f in h}
            if offsets is None:
                offsets = off
            elif off != offsets:
                raise AssertionError("face heights are not a renormalization of dual heights")
        return offsets


def superimpose(graph: MultiGraph, m, m0, coloring=None) -> list:
    """Directed cycles of ``m`` (black to white) and ``m0`` (white to black)."""
    ones = {v: 1 for v in graph.vertices}
    check_dfactor(graph, ones, m)
    check_dfactor(graph, ones, m0)
    color = coloring or bipartite_coloring(graph)
    out_edge = {}
    for e in frozenset(m) ^ frozenset(m0):
        u, v = graph.ends[e]
        b, w = (u, v) if color[u] == BLACK else (v, u)
        if e in m:
            out_edge[b] = DirectedEdge(e, b, w)
        else:
            out_edge[w] = DirectedEdge(e, w, b)
    cycles = []
    seen = set()
    for v in graph.vertices:
        if v not in out_edge or v in seen:
            continue
        cyc = []
        x = v
        while x not in seen:
            seen.add(x)
            d = out_edge[x]
            cyc.append(d)
            x = d.head
        cycles.append(tuple(cyc))
    return cycles

