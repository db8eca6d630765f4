"""d-factors of bipartite graphs on the torus: cohomology and phase diagrams."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

import networkx as nx

from .errors import BadParams, NotInDiagram, NotSphere
from .graph import DirectedEdge, MultiGraph, dual_graph, embedding
from .matchings import DFactorLattice, enumerate_dfactors
from .orientations import Orientation, circulation_around


def torus_grid(rows: int, cols: int) -> MultiGraph:
    """``rows`` x ``cols`` grid with wrap-around; vertex ``r*cols + c``.

    Edge ``r*cols + c`` runs east from (r, c); edge ``rows*cols + r*cols + c``
    runs south from (r, c).  Clockwise rotation: north, east, south, west.
    """
    if rows < 2 or cols < 2:
        raise BadParams("a torus grid needs at least 2 rows and 2 columns")
    n = rows * cols

    def vid(r, c):
        return (r % rows) * cols + (c % cols)

    edges = []
    for r in range(rows):
        for c in range(cols):
            edges.append((vid(r, c), vid(r, c), vid(r, c + 1)))
    for r in range(rows):
        for c in range(cols):
            edges.append((n + vid(r, c), vid(r, c), vid(r + 1, c)))
    rotation = {}
    for r in range(rows):
        for c in range(cols):
            rotation[vid(r, c)] = [n + vid(r - 1, c), vid(r, c), n + vid(r, c), vid(r, c - 1)]
    return MultiGraph(range(n), edges, rotation)


@dataclass(frozen=True)
class TorusGraph:
    graph: MultiGraph
    rows: int
    cols: int
    g1: tuple  # dual darts, horizontal
    g2: tuple  # dual darts, vertical
    p1: tuple  # primal darts, horizontal
    p2: tuple  # primal darts, vertical

    @property
    def dual(self) -> MultiGraph:
        return dual_graph(self.graph, "torus")[0]


def _chain(dual: MultiGraph, edges) -> tuple:
    """Orient a cyclic list of dual edges head to tail."""
    first = dual.canonical(edges[0])
    for start in (first, first.reversed()):
        darts = [start]
        for e in edges[1:]:
            prev = darts[-1].head
            u, v = dual.ends[e]
            if u == prev:
                darts.append(DirectedEdge(e, u, v))
            elif v == prev:
                darts.append(DirectedEdge(e, v, u))
            else:
                break
        else:
            if darts[-1].head == darts[0].tail:
                return tuple(darts)
    raise BadParams("generator edges do not form a closed dual walk")


def torus_instance(rows: int, cols: int, row: int = 0, col: int = 0) -> TorusGraph:
    """Torus grid with generators through row ``row`` and column ``col``."""
    g = torus_grid(rows, cols)
    emb = embedding(g, "torus")
    dual = dual_graph(g, "torus")[0]
    n = rows * cols
    vertical = [n + row * cols + c for c in range(cols)]
    horizontal = [r * cols + col for r in range(rows)]
    g1 = _chain(dual, vertical)
    g2 = _chain(dual, horizontal)
    p1 = tuple(g.canonical(row * cols + c) for c in range(cols))
    p2 = tuple(g.canonical(n + r * cols + col) for r in range(rows))
    tg = TorusGraph(g, rows, cols, g1, g2, p1, p2)
    det = intersection(emb, g1, p1) * intersection(emb, g2, p2) - intersection(emb, g1, p2) * intersection(emb, g2, p1)
    if det == 0:
        raise BadParams("generators are not independent")
    return tg


def intersection(emb, dual_walk, primal_cycle) -> int:
    """Signed crossings: +1 when a dual dart passes from the left of the primal dart to its right."""
    on = {d.edge: d for d in primal_cycle}
    total = 0
    for delta in dual_walk:
        d = on.get(delta.edge)
        if d is None:
            continue
        total += 1 if (delta.tail, delta.head) == (emb.left_face(d), emb.right_face(d)) else -1
    return total


class TorusDimers:
    """All d-factors of a torus graph with their cohomology."""

    def __init__(self, tg: TorusGraph, degrees=None, coloring=None):
        self.tg = tg
        self.graph = tg.graph
        if embedding(self.graph, "torus").euler != 0:
            raise NotSphere("not a torus embedding")
        factors = enumerate_dfactors(self.graph, degrees)
        self.duality = DFactorLattice(self.graph, degrees, fstar=0, surface="torus",
                                      factors=factors, coloring=coloring)
        self.emb = self.duality.emb
        self.factors = self.duality.factors

    def orientation(self, m) -> Orientation:
        return self.duality.orientation_of_dfactor(m)

    def cohomology_of(self, m, g1=None, g2=None) -> tuple:
        r = self.orientation(m)
        return (circulation_around(r, g1 or self.tg.g1), circulation_around(r, g2 or self.tg.g2))

    def phase_diagram(self) -> Counter:
        return Counter(self.cohomology_of(m) for m in self.factors)

    def twists(self, m) -> list:
        """All (face, result) pairs of face twists in either direction."""
        out = []
        for f in self.emb.faces:
            s = self.duality.alternating_sense(m, f.id)
            if s:
                out.append((f.id, frozenset(m) ^ frozenset(f.edges)))
        return out

    def twist_components(self) -> list:
        """Connected components of the face-twist graph, canonically sorted."""
        key = self.duality.key
        index = {key(m): i for i, m in enumerate(self.factors)}
        g = nx.Graph()
        g.add_nodes_from(range(len(self.factors)))
        for i, m in enumerate(self.factors):
            for _, n in self.twists(m):
                g.add_edge(i, index[key(n)])
        comps = [sorted(c) for c in nx.connected_components(g)]
        comps.sort()
        return [[self.factors[i] for i in c] for c in comps]

    def winding(self, delta: DirectedEdge) -> tuple:
        return (intersection(self.emb, [delta], self.tg.p1), intersection(self.emb, [delta], self.tg.p2))

    def noncontractible_forward_cycle(self, r: Orientation):
        """A directed cycle of ``r`` with non-zero homology, or None."""
        dual = r.graph
        dg = nx.DiGraph()
        arcs = {}
        for d in r:
            dg.add_edge(d.tail, d.head)
            arcs.setdefault((d.tail, d.head), []).append(d)
        for comp in nx.strongly_connected_components(dg):
            if len(comp) < 2:
                continue
            root = min(comp, key=dual.vindex.get)
            pot = {root: (0, 0)}
            via = {root: None}
            queue = deque([root])
            while queue:
                x = queue.popleft()
                for y in sorted(dg.successors(x), key=dual.vindex.get):
                    if y in comp and y not in pot:
                        d = arcs[(x, y)][0]
                        w = self.winding(d)
                        pot[y] = (pot[x][0] + w[0], pot[x][1] + w[1])
                        via[y] = d
                        queue.append(y)
            for (x, y), ds in arcs.items():
                if x not in comp or y not in comp:
                    continue
                for d in ds:
                    w = self.winding(d)
                    if (pot[x][0] + w[0], pot[x][1] + w[1]) != pot[y]:
                        return self._nonzero_cycle(dg, comp, root, via, d, arcs)
        return None

    def _nonzero_cycle(self, dg, comp, root, via, d, arcs):
        def tree_path(v):
            path = []
            while via[v] is not None:
                path.append(via[v])
                v = via[v].tail
            return path[::-1]

        sub = dg.subgraph(comp)
        back_nodes = nx.shortest_path(sub, d.head, root)
        back = [arcs[(a, b)][0] for a, b in zip(back_nodes, back_nodes[1:])]
        # the two closed walks differ in winding, so one of them is non-zero
        for walk in (tree_path(d.tail) + [d] + back, tree_path(d.head) + back):
            for cyc in _simple_cycles_of_walk(walk):
                w = [0, 0]
                for x in cyc:
                    a, b = self.winding(x)
                    w[0] += a
                    w[1] += b
                if w != [0, 0]:
                    return tuple(cyc)
        raise AssertionError("inconsistent windings but no non-contractible cycle found")


def _simple_cycles_of_walk(walk):
    """Split a closed walk into simple cycles."""
    stack = []
    pos = {}
    out = []
    for d in walk:
        if d.tail not in pos:
            pos[d.tail] = len(stack)
        stack.append(d)
        if d.head in pos:
            k = pos[d.head]
            cyc = stack[k:]
            out.append(cyc)
            for x in cyc:
                pos.pop(x.tail, None)
            del stack[k:]
    return out


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list:
    """Hull vertices in counterclockwise order (no collinear points)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def is_extremal(point, diagram) -> bool:
    """True when ``point`` lies on the boundary of the convex hull of ``diagram``."""
    pts = set(diagram)
    if tuple(point) not in pts:
        raise NotInDiagram(f"{point!r} is not in the phase diagram")
    hull = convex_hull(pts)
    if len(hull) <= 2:
        return True
    p = tuple(point)
    for a, b in zip(hull, hull[1:] + hull[:1]):
        if _cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
            return True
    return False
