"""Orientations with a fixed circulation and their distributive lattice.

An orientation stores one bit per edge (0: the edge runs from its first listed
endpoint to its second).  All height arithmetic is exact: heights are
:class:`fractions.Fraction` values, and internally they are kept as integers
scaled by the common denominator of the edge bias.
"""

from __future__ import annotations

import math
import os
from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import (
    BadCycle,
    DifferentCirculation,
    EmptyEnumeration,
    Inconsistent,
    IsAstar,
    NotAcyclic,
    NotAHeight,
    NotMaximal,
    TooLarge,
)
from .graph import (
    CycleBasis,
    DirectedEdge,
    MultiGraph,
    accessibility_partition,
    cycle_basis,
    spanning_tree_dfs,
)
from .poset import (
    HasseDiagram,
    check_lattice_tables,
    covers_from_leq_matrix,
    ideal_lattice,
    transitive_closure,
)

DEFAULT_MAX_EDGES = 24
DEFAULT_MAX_ELEMENTS = 200_000


def max_edges_cap() -> int:
    return int(os.environ.get("ORIENT_LATTICE_MAX_EDGES", DEFAULT_MAX_EDGES))


class Orientation:
    """One direction for every edge of ``graph``."""

    __slots__ = ("graph", "bits", "_hash")

    def __init__(self, graph: MultiGraph, bits):
        bits = tuple(int(b) for b in bits)
        if len(bits) != graph.n_edges:
            raise ValueError("orientation must have one bit per edge")
        self.graph = graph
        self.bits = bits
        self._hash = hash(bits)

    @classmethod
    def from_directed(cls, graph: MultiGraph, directed) -> "Orientation":
        """From DirectedEdges or a mapping ``edge -> (tail, head)``."""
        if isinstance(directed, Mapping):
            pairs = {e: tuple(th) for e, th in directed.items()}
        else:
            pairs = {d.edge: (d.tail, d.head) for d in directed}
        if set(pairs) != set(graph.edges):
            raise ValueError("orientation must direct every edge exactly once")
        bits = []
        for e in graph.edges:
            tail, head = pairs[e]
            u, v = graph.ends[e]
            if (tail, head) == (u, v):
                bits.append(0)
            elif (tail, head) == (v, u):
                bits.append(1)
            else:
                raise ValueError(f"{(tail, head)!r} is not a direction of edge {e!r}")
        return cls(graph, bits)

    def direction(self, e) -> DirectedEdge:
        u, v = self.graph.ends[e]
        if self.bits[self.graph.eindex[e]]:
            return DirectedEdge(e, v, u)
        return DirectedEdge(e, u, v)

    def __iter__(self):
        for e in self.graph.edges:
            yield self.direction(e)

    def __contains__(self, de) -> bool:
        return self.direction(de.edge) == de

    def flipped(self, edges: Iterable) -> "Orientation":
        bits = list(self.bits)
        for e in edges:
            i = self.graph.eindex[e]
            bits[i] ^= 1
        return Orientation(self.graph, bits)

    def respects_pins(self) -> bool:
        return all(self.direction(e) == d for e, d in self.graph.pinned.items())

    def __eq__(self, other):
        if not isinstance(other, Orientation):
            return NotImplemented
        return self.bits == other.bits and (
            self.graph is other.graph or self.graph.edges == other.graph.edges
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.bits < other.bits

    def __repr__(self):
        return "Orientation(" + "".join(map(str, self.bits)) + ")"

    def to_json(self) -> dict:
        return {str(d.edge): [d.tail, d.head] for d in self}


def circulation_around(r: Orientation, cycle) -> int:
    """Forward minus backward edges of ``r`` along a closed directed walk."""
    cycle = list(cycle)
    if not cycle:
        return 0
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if a.head != b.tail:
            raise BadCycle(f"walk breaks between {a!r} and {b!r}")
    total = 0
    for d in cycle:
        total += 1 if r.direction(d.edge) == d else -1
    return total


@dataclass(frozen=True)
class Circulation:
    """Circulation values on a cycle basis, witnessed by a reference orientation."""

    graph: MultiGraph
    basis: CycleBasis
    values: tuple
    reference: Orientation

    @classmethod
    def of(cls, r: Orientation) -> "Circulation":
        basis = cycle_basis(r.graph)
        values = tuple(circulation_around(r, c) for c in basis.cycles)
        return cls(r.graph, basis, values, r)

    def check(self):
        for cyc, val in zip(self.basis.cycles, self.values):
            if (val - len(cyc)) % 2 or abs(val) > len(cyc):
                raise ValueError(f"infeasible circulation value {val} on a cycle of length {len(cyc)}")

    def admits(self, r: Orientation) -> bool:
        return is_c_orientation(r, self)


def is_c_orientation(r: Orientation, c: Circulation) -> bool:
    if not r.respects_pins():
        return False
    return all(
        circulation_around(r, cyc) == val for cyc, val in zip(c.basis.cycles, c.values)
    )


def forced_edges(c: Circulation):
    """Forced and forbidden directed edges.

    An edge is forced exactly when its endpoints share an accessibility class
    (its direction is read off the reference).  Pinned edges are forced too.
    """
    r = c.reference
    classes = accessibility_partition(r)
    cls_of = {v: i for i, cl in enumerate(classes) for v in cl}
    forced = set()
    for e in c.graph.edges:
        u, v = c.graph.ends[e]
        if cls_of[u] == cls_of[v] or e in c.graph.pinned:
            forced.add(r.direction(e))
    return frozenset(forced), frozenset(d.reversed() for d in forced)


class EdgeBias(Mapping):
    """Exact weights on directed edges with ``F(e) + F(-e) = 1``.

    Stored as the weight of each edge's canonical direction.
    """

    def __init__(self, graph: MultiGraph, forward):
        self.graph = graph
        self.forward = tuple(Fraction(x) for x in forward)
        if len(self.forward) != graph.n_edges:
            raise ValueError("bias needs one value per edge")
        if any(x < 0 or x > 1 for x in self.forward):
            raise ValueError("bias values must lie in [0, 1]")
        self.denominator = math.lcm(*(x.denominator for x in self.forward)) if self.forward else 1

    @classmethod
    def from_mapping(cls, graph: MultiGraph, weights) -> "EdgeBias":
        """From a mapping DirectedEdge -> value (either direction may be given)."""
        forward = []
        for e in graph.edges:
            d = graph.canonical(e)
            if d in weights:
                forward.append(Fraction(weights[d]))
            else:
                forward.append(1 - Fraction(weights[d.reversed()]))
        return cls(graph, forward)

    @classmethod
    def uniform(cls, graph: MultiGraph, value=Fraction(1, 2)) -> "EdgeBias":
        return cls(graph, [Fraction(value)] * graph.n_edges)

    def __getitem__(self, de: DirectedEdge) -> Fraction:
        p = self.forward[self.graph.eindex[de.edge]]
        u, v = self.graph.ends[de.edge]
        if (de.tail, de.head) == (u, v):
            return p
        if (de.tail, de.head) == (v, u):
            return 1 - p
        raise KeyError(de)

    def __iter__(self):
        return iter(self.graph.directed_edges())

    def __len__(self):
        return 2 * self.graph.n_edges

    def __eq__(self, other):
        if isinstance(other, EdgeBias):
            return self.forward == other.forward
        return super().__eq__(other)

    __hash__ = None

    def check(self, c: Circulation, forced=None):
        """Assert the defining properties; ``forced`` restricts the 0/1 test."""
        for cyc, val in zip(c.basis.cycles, c.values):
            total = sum(self[d] for d in cyc)
            if total != Fraction(len(cyc) + val, 2):
                raise Inconsistent(f"bias sums to {total} on a basis cycle with circulation {val}")
        if forced is not None:
            for e in self.graph.edges:
                d = self.graph.canonical(e)
                w = self[d]
                if d in forced:
                    ok = w == 1
                elif d.reversed() in forced:
                    ok = w == 0
                else:
                    ok = 0 < w < 1
                if not ok:
                    raise Inconsistent(f"bias {w} on {d!r} contradicts its forcing status")


def average_bias(orientations) -> EdgeBias:
    """Fraction of the given orientations containing each directed edge."""
    orientations = list(orientations)
    if not orientations:
        raise EmptyEnumeration("cannot average over no orientations")
    graph = orientations[0].graph
    n = len(orientations)
    counts = np.zeros(graph.n_edges, dtype=np.int64)
    for r in orientations:
        counts += np.asarray(r.bits, dtype=np.int64)
    return EdgeBias(graph, [Fraction(n - int(k), n) for k in counts])


class HeightFunction(Mapping):
    """Exact vertex heights anchored at ``anchor``."""

    def __init__(self, graph: MultiGraph, values, anchor):
        self.graph = graph
        self.values = tuple(Fraction(x) for x in values)
        self.anchor = anchor

    def __getitem__(self, v) -> Fraction:
        return self.values[self.graph.vindex[v]]

    def __iter__(self):
        return iter(self.graph.vertices)

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if isinstance(other, HeightFunction):
            return self.values == other.values and self.anchor == other.anchor
        return super().__eq__(other)

    __hash__ = None

    def __repr__(self):
        return "HeightFunction(" + ", ".join(f"{v!r}: {self[v]}" for v in self) + ")"

    def to_json(self) -> dict:
        return {str(v): str(self[v]) for v in self}


def _bfs_tree(graph: MultiGraph, root):
    """Breadth-first tree steps ``(edge index, parent index, child index)``."""
    seen = {root}
    steps = []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in graph.incident[v]:
            w = graph.other(e, v)
            if w not in seen:
                seen.add(w)
                steps.append((graph.eindex[e], graph.vindex[v], graph.vindex[w]))
                queue.append(w)
    return steps


def _scaled_heights(r: Orientation, vstar, bias: EdgeBias, steps=None):
    """Heights times ``bias.denominator`` as integers; validates every edge."""
    g = r.graph
    L = bias.denominator
    pf = [int(p * L) for p in bias.forward]
    steps = steps if steps is not None else _bfs_tree(g, vstar)
    h = [None] * g.n_vertices
    h[g.vindex[vstar]] = 0
    ends_idx = [(g.vindex[g.ends[e][0]], g.vindex[g.ends[e][1]]) for e in g.edges]
    for ei, pi, ci in steps:
        u, _ = ends_idx[ei]
        fw = pf[ei] if pi == u else L - pf[ei]  # bias * L of the step direction
        forward = (r.bits[ei] == 0) == (pi == u)
        h[ci] = h[pi] + (L - fw if forward else -fw)
    for ei, (u, v) in enumerate(ends_idx):
        step = (L - pf[ei]) if r.bits[ei] == 0 else -pf[ei]
        if h[v] - h[u] != step:
            raise Inconsistent(
                f"edge {g.edges[ei]!r} breaks the height rule: the bias does not match "
                "this orientation's circulation"
            )
    return tuple(h)


def height_function(r: Orientation, vstar, bias: EdgeBias) -> HeightFunction:
    L = bias.denominator
    h = _scaled_heights(r, vstar, bias)
    return HeightFunction(r.graph, [Fraction(x, L) for x in h], vstar)


def orientation_of_height(h, c: Circulation, bias: EdgeBias, forced=None) -> Orientation:
    """Inverse of :func:`height_function`; raises NotAHeight on a bad map."""
    g = c.graph
    if isinstance(h, HeightFunction):
        anchor = h.anchor
        if h[anchor] != 0:
            raise NotAHeight(f"height at the anchor {anchor!r} is {h[anchor]}, not 0")
    if forced is None:
        forced, _ = forced_edges(c)
    forced_dir = {d.edge: d for d in forced}
    bits = []
    for e in g.edges:
        u, v = g.ends[e]
        p = bias[DirectedEdge(e, u, v)]
        diff = Fraction(h[v]) - Fraction(h[u])
        if diff == 1 - p and diff == -p:
            bits.append(0 if forced_dir[e].tail == u else 1)
        elif diff == 1 - p:
            bits.append(0)
        elif diff == -p:
            bits.append(1)
        else:
            raise NotAHeight(f"height step {diff} across edge {e!r} is neither {1 - p} nor {-p}")
        if e in forced_dir and bits[-1] != (0 if forced_dir[e].tail == u else 1):
            raise NotAHeight(f"edge {e!r} would leave its forced direction")
    r = Orientation(g, bits)
    if not r.respects_pins():
        raise NotAHeight("heights contradict a pinned edge")
    return r


def _classes_and_frozen(r: Orientation, astar=None):
    g = r.graph
    classes = accessibility_partition(r)
    cls_of = {v: i for i, cl in enumerate(classes) for v in cl}
    frozen = set()
    if astar is not None:
        frozen.add(cls_of[next(iter(astar))])
    for v in g.boundary_vertices:
        frozen.add(cls_of[v])
    return classes, cls_of, frozen


def _is_maximal_class(r: Orientation, cl, sign=1) -> bool:
    """All edges between ``cl`` and its complement point in (sign=1) or out (-1)."""
    g = r.graph
    for v in cl:
        for e in g.incident[v]:
            w = g.other(e, v)
            if w in cl:
                continue
            d = r.direction(e)
            if (d.head == v) != (sign == 1):
                return False
    return True


def maximal_classes(r: Orientation, astar) -> list:
    """Maximal accessibility classes other than ``astar`` (and pinned ones)."""
    classes, _, frozen = _classes_and_frozen(r, astar)
    return [cl for i, cl in enumerate(classes) if i not in frozen and _is_maximal_class(r, cl)]


def push_down(r: Orientation, a, astar=None) -> Orientation:
    """Reverse every edge between the maximal class ``a`` and its complement."""
    a = frozenset(a)
    if astar is not None and a == frozenset(astar):
        raise IsAstar("cannot push down the special class A*")
    if a & r.graph.boundary_vertices:
        raise IsAstar("cannot push down a class meeting the pinned boundary")
    classes = accessibility_partition(r)
    if a not in classes or not _is_maximal_class(r, a):
        raise NotMaximal(f"class {sorted(a)!r} is not a maximal accessibility class")
    return _flip_boundary(r, a)


def push_up(r: Orientation, a, astar=None) -> Orientation:
    a = frozenset(a)
    if astar is not None and a == frozenset(astar):
        raise IsAstar("cannot push up the special class A*")
    if a & r.graph.boundary_vertices:
        raise IsAstar("cannot push up a class meeting the pinned boundary")
    classes = accessibility_partition(r)
    if a not in classes or not _is_maximal_class(r, a, sign=-1):
        raise NotMaximal(f"class {sorted(a)!r} is not a minimal accessibility class")
    return _flip_boundary(r, a)


def _flip_boundary(r, a):
    g = r.graph
    edges = [e for v in a for e in g.incident[v] if g.other(e, v) not in a]
    return r.flipped(edges)


@dataclass(frozen=True)
class RankFunction:
    """Affine functional ``sum(a[e] * F(e)) + a0`` on edge indicator vectors."""

    coefficients: dict  # DirectedEdge -> int
    constant: int

    def __call__(self, r: Orientation) -> int:
        return sum(self.coefficients.get(d, 0) for d in r) + self.constant


@dataclass(frozen=True)
class IrreduciblePoset:
    elements: tuple  # (vertex, level)
    relations: frozenset  # generating pairs (upper, lower) from the adjacency rule
    covers: frozenset  # Hasse covers (upper, lower) of the generated order
    minimum: dict  # vertex -> m(v)
    range: dict  # vertex -> D(v)

    def leq_matrix(self) -> np.ndarray:
        idx = {x: i for i, x in enumerate(self.elements)}
        return transitive_closure(
            len(self.elements), [(idx[lo], idx[up]) for up, lo in self.relations]
        )

    def ideal_count(self) -> int:
        return len(ideal_lattice(self.leq_matrix()).elements)


class OrientationLattice:
    """The c-orientations of a graph ordered by height functions.

    Parameters
    ----------
    reference : Orientation
        Witness of the circulation; every other element shares its circulation
        (and its pinned edges, if the graph has any).
    vstar : vertex, optional
        Anchor of the height functions; defaults to the lowest vertex, or the
        lowest pinned-boundary vertex when the graph is pinned.
    bias : EdgeBias, optional
        Defaults to the average over all elements.
    elements : iterable of Orientation, optional
        A precomputed enumeration (for instance transported from d-factors).
        It is cross-checked against the push-move closure.
    """

    def __init__(
        self,
        reference: Orientation,
        vstar=None,
        bias: EdgeBias | None = None,
        elements=None,
        max_edges: int | None = None,
        max_elements: int = DEFAULT_MAX_ELEMENTS,
    ):
        g = reference.graph
        self.graph = g
        self.reference = reference
        self.circulation = Circulation.of(reference)
        if not reference.respects_pins():
            raise ValueError("reference orientation violates a pinned edge")
        if vstar is None:
            bnd = g.boundary_vertices
            vstar = next((v for v in g.vertices if v in bnd), g.vertices[0])
        self.vstar = vstar
        self.classes, self.class_of, self.frozen = _classes_and_frozen(reference, [vstar])
        self.astar = self.classes[self.class_of[vstar]]
        self.max_edges = max_edges_cap() if max_edges is None else max_edges
        self.max_elements = max_elements
        self._given_elements = None if elements is None else sorted(set(elements))
        self._bias = bias
        self._steps = _bfs_tree(g, vstar)
        self._heights = {}
        self._class_edges = [
            [
                (g.eindex[e], g.vindex[v])
                for v in cl
                for e in g.incident[v]
                if g.other(e, v) not in cl
            ]
            for cl in self.classes
        ]
        ends = [g.ends[e] for e in g.edges]
        self._head_idx = [(g.vindex[u], g.vindex[v]) for u, v in ends]

    # --- basic structure -------------------------------------------------
    @property
    def pushable(self) -> list:
        return [i for i in range(len(self.classes)) if i not in self.frozen]

    @cached_property
    def forced(self) -> frozenset:
        return forced_edges(self.circulation)[0]

    @property
    def is_acyclic(self) -> bool:
        return all(len(cl) == 1 for cl in self.classes)

    @property
    def bias(self) -> EdgeBias:
        if self._bias is None:
            self._bias = average_bias(self.elements)
            self._bias.check(self.circulation, self.forced)
        return self._bias

    def _points_in(self, r: Orientation, k: int, into: bool) -> bool:
        for ei, vi in self._class_edges[k]:
            u, _ = self._head_idx[ei]
            head_is_u = r.bits[ei] == 1
            head_in_class = head_is_u == (u == vi)
            if head_in_class != into:
                return False
        return True

    def maximal_class_ids(self, r: Orientation) -> list:
        return [k for k in self.pushable if self._points_in(r, k, True)]

    def minimal_class_ids(self, r: Orientation) -> list:
        return [k for k in self.pushable if self._points_in(r, k, False)]

    def _flip_class(self, r: Orientation, k: int) -> Orientation:
        bits = list(r.bits)
        for ei, _ in self._class_edges[k]:
            bits[ei] ^= 1
        return Orientation(self.graph, bits)

    def maximal_classes(self, r: Orientation) -> list:
        """Maximal classes away from A*, checked against the mesa criterion."""
        ids = self.maximal_class_ids(r)
        h = self.height(r)
        mesas = []
        g = self.graph
        for k in self.pushable:
            cl = self.classes[k]
            vals = {h[v] for v in cl}
            if len(vals) != 1:
                continue
            top = vals.pop()
            nbrs = {g.other(e, v) for v in cl for e in g.incident[v]} - cl
            if all(h[w] < top for w in nbrs):
                mesas.append(k)
        assert mesas == ids, "maximal classes disagree with mesas of the height function"
        return [self.classes[k] for k in ids]

    def push_down(self, r: Orientation, a) -> Orientation:
        a = frozenset(a)
        if a == self.astar:
            raise IsAstar("cannot push down the special class A*")
        if a not in self.classes:
            raise NotMaximal(f"{sorted(a)!r} is not an accessibility class")
        k = self.classes.index(a)
        if k in self.frozen:
            raise IsAstar("cannot push down a class meeting the pinned boundary")
        if not self._points_in(r, k, True):
            raise NotMaximal(f"class {sorted(a)!r} is not maximal")
        return self._flip_class(r, k)

    def push_up(self, r: Orientation, a) -> Orientation:
        a = frozenset(a)
        if a == self.astar:
            raise IsAstar("cannot push up the special class A*")
        if a not in self.classes:
            raise NotMaximal(f"{sorted(a)!r} is not an accessibility class")
        k = self.classes.index(a)
        if k in self.frozen:
            raise IsAstar("cannot push up a class meeting the pinned boundary")
        if not self._points_in(r, k, False):
            raise NotMaximal(f"class {sorted(a)!r} is not minimal")
        return self._flip_class(r, k)

    # --- heights and order -----------------------------------------------
    def scaled_height(self, r: Orientation) -> tuple:
        h = self._heights.get(r)
        if h is None:
            h = _scaled_heights(r, self.vstar, self.bias, self._steps)
            self._heights[r] = h
        return h

    def height(self, r: Orientation) -> HeightFunction:
        L = self.bias.denominator
        return HeightFunction(self.graph, [Fraction(x, L) for x in self.scaled_height(r)], self.vstar)

    def _check_same(self, r):
        if r.graph is not self.graph and r.graph.edges != self.graph.edges:
            raise DifferentCirculation("orientation belongs to a different graph")
        if not is_c_orientation(r, self.circulation):
            raise DifferentCirculation(f"{r!r} does not have this lattice's circulation")

    def compare(self, r: Orientation, s: Orientation) -> str:
        self._check_same(r)
        self._check_same(s)
        hr, hs = self.scaled_height(r), self.scaled_height(s)
        ge = all(a >= b for a, b in zip(hr, hs))
        le = all(a <= b for a, b in zip(hr, hs))
        if ge and le:
            return "equal"
        if ge:
            return "greater"
        if le:
            return "less"
        return "incomparable"

    def _from_scaled(self, h) -> Orientation:
        L = self.bias.denominator
        return orientation_of_height(
            {v: Fraction(x, L) for v, x in zip(self.graph.vertices, h)},
            self.circulation,
            self.bias,
            self.forced,
        )

    def orientation_of_height(self, h) -> Orientation:
        return orientation_of_height(h, self.circulation, self.bias, self.forced)

    def meet(self, r: Orientation, s: Orientation) -> Orientation:
        self._check_same(r)
        self._check_same(s)
        return self._from_scaled(tuple(map(min, self.scaled_height(r), self.scaled_height(s))))

    def join(self, r: Orientation, s: Orientation) -> Orientation:
        self._check_same(r)
        self._check_same(s)
        return self._from_scaled(tuple(map(max, self.scaled_height(r), self.scaled_height(s))))

    # --- extremes and enumeration ------------------------------------------
    def bottom_from(self, r: Orientation, choose=min) -> Orientation:
        """Push down until no maximal class remains; ``choose`` picks the class."""
        while True:
            ids = self.maximal_class_ids(r)
            if not ids:
                return r
            r = self._flip_class(r, choose(ids))

    def top_from(self, r: Orientation, choose=min) -> Orientation:
        while True:
            ids = self.minimal_class_ids(r)
            if not ids:
                return r
            r = self._flip_class(r, choose(ids))

    @cached_property
    def bottom(self) -> Orientation:
        return self.bottom_from(self.reference)

    @cached_property
    def top(self) -> Orientation:
        return self.top_from(self.reference)

    def extremes(self):
        return self.bottom, self.top

    def enumerate_by_moves(self) -> list:
        """Breadth-first closure of the bottom under push-up moves."""
        start = self.bottom
        seen = {start}
        queue = deque([start])
        while queue:
            r = queue.popleft()
            for k in self.minimal_class_ids(r):
                s = self._flip_class(r, k)
                if s not in seen:
                    seen.add(s)
                    if len(seen) > self.max_elements:
                        raise TooLarge(f"more than {self.max_elements} orientations")
                    queue.append(s)
        return sorted(seen)

    def enumerate_by_filter(self) -> list:
        """All pin-respecting assignments with the right basis circulations.

        Exhaustive over the free edges; a branch is cut as soon as some basis
        cycle can no longer reach its value.
        """
        g = self.graph
        free = [i for i, e in enumerate(g.edges) if e not in g.pinned]
        if len(free) > self.max_edges:
            raise TooLarge(
                f"{len(free)} free edges exceed the brute-force cap of {self.max_edges} "
                "(set ORIENT_LATTICE_MAX_EDGES to raise it)"
            )
        return filter_orientations(g, self.circulation, self.max_elements)

    @cached_property
    def elements(self) -> list:
        by_moves = self.enumerate_by_moves()
        if self._given_elements is not None:
            other = self._given_elements
        else:
            other = self.enumerate_by_filter()
        if set(other) != set(by_moves):
            raise AssertionError(
                f"enumeration strategies disagree: {len(other)} vs {len(by_moves)} orientations"
            )
        return by_moves

    def __len__(self):
        return len(self.elements)

    def index(self, r: Orientation) -> int:
        return self._index[r]

    @cached_property
    def _index(self) -> dict:
        return {r: i for i, r in enumerate(self.elements)}

    # --- diagrams ---------------------------------------------------------
    @cached_property
    def ranks(self) -> dict:
        """Push-down distance from the bottom."""
        rank = {self.bottom: 0}
        queue = deque([self.bottom])
        while queue:
            r = queue.popleft()
            for k in self.minimal_class_ids(r):
                s = self._flip_class(r, k)
                if s not in rank:
                    rank[s] = rank[r] + 1
                    queue.append(s)
        return rank

    def push_covers(self) -> frozenset:
        idx = self._index
        covers = set()
        for r in self.elements:
            for k in self.maximal_class_ids(r):
                covers.add((idx[r], idx[self._flip_class(r, k)]))
        return frozenset(covers)

    def leq_matrix(self) -> np.ndarray:
        """``m[i, j]``: element i is below element j in the height order."""
        H = np.array([self.scaled_height(r) for r in self.elements], dtype=np.int64)
        return np.all(H[:, None, :] <= H[None, :, :], axis=2)

    def order_covers(self) -> frozenset:
        return covers_from_leq_matrix(self.leq_matrix())

    def hasse_diagram(self, check: bool = True) -> HasseDiagram:
        covers = self.push_covers()
        if check:
            order = self.order_covers()
            if order != covers:
                raise AssertionError("push-down covers differ from the order's covering relation")
        rank = tuple(self.ranks[r] for r in self.elements)
        for up, lo in covers:
            assert rank[up] == rank[lo] + 1
        return HasseDiagram(tuple(self.elements), covers, rank)

    def operation_tables(self):
        """Meet and join tables over element indices, via pointwise min/max."""
        H = [self.scaled_height(r) for r in self.elements]
        pos = {h: i for i, h in enumerate(H)}
        n = len(H)
        meet = np.empty((n, n), dtype=np.int64)
        join = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i, n):
                lo = tuple(map(min, H[i], H[j]))
                hi = tuple(map(max, H[i], H[j]))
                if lo not in pos or hi not in pos:
                    raise AssertionError("pointwise min/max of heights left the lattice")
                meet[i, j] = meet[j, i] = pos[lo]
                join[i, j] = join[j, i] = pos[hi]
        return meet, join

    def check_lattice(self) -> list:
        meet, join = self.operation_tables()
        return check_lattice_tables(meet, join, self.leq_matrix())

    def cover_distance(self, r: Orientation, s: Orientation) -> int:
        """Number of push moves (either direction) needed to turn r into s."""
        self._check_same(r)
        self._check_same(s)
        dist = {r: 0}
        queue = deque([r])
        while queue:
            x = queue.popleft()
            if x == s:
                return dist[x]
            for k in self.maximal_class_ids(x) + self.minimal_class_ids(x):
                y = self._flip_class(x, k)
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        raise AssertionError("elements are not connected by push moves")

    def rank_affine(self) -> RankFunction:
        """Affine functional on indicator vectors equal to the lattice rank.

        Each pushable class gets unit demand at its least vertex; the demands
        are routed from the anchor along the DFS spanning tree, and every
        directed edge off the tree (and every tree edge pointing back to the
        anchor) gets coefficient zero.
        """
        g = self.graph
        parent, order = spanning_tree_dfs(g, self.vstar)
        demand = {v: 0 for v in g.vertices}
        for k in self.pushable:
            cl = self.classes[k]
            demand[min(cl, key=g.vindex.get)] = 1
        flow = dict(demand)
        for v in reversed(order):
            e = parent[v]
            if e is not None:
                flow[g.other(e, v)] += flow[v]
        coeffs = {}
        for v in order:
            e = parent[v]
            if e is not None and flow[v]:
                coeffs[DirectedEdge(e, g.other(e, v), v)] = flow[v]
        a0 = -sum(coeffs.get(d, 0) for d in self.bottom)
        return RankFunction(coeffs, a0)

    def join_irreducibles(self) -> IrreduciblePoset:
        if not self.is_acyclic:
            raise NotAcyclic("join-irreducible construction needs an acyclic circulation")
        g = self.graph
        extra = {d for d in self.forced if d.edge not in g.pinned}
        if extra:
            raise NotAcyclic(f"pins force further edges, e.g. {sorted(extra)[0]!r}")
        L = self.bias.denominator
        H = np.array([self.scaled_height(r) for r in self.elements], dtype=np.int64)
        lo, hi = H.min(axis=0), H.max(axis=0)
        m, D = {}, {}
        frozen_v = {v for k in self.frozen for v in self.classes[k]}
        for v in g.vertices:
            i = g.vindex[v]
            m[v] = Fraction(int(lo[i]), L)
            D[v] = int(hi[i] - lo[i]) // L
        elements = [(v, i) for v in g.vertices if v not in frozen_v for i in range(1, D[v] + 1)]
        rel = set()
        for e in g.edges:
            a, b = g.ends[e]
            for v, w in ((a, b), (b, a)):
                for i in range(1, D[v] + 1):
                    for j in range(1, D[w] + 1):
                        if v in frozen_v or w in frozen_v:
                            continue
                        gap = (m[v] + i) - (m[w] + j)
                        if 0 < gap < 1:
                            rel.add(((v, i), (w, j)))
        idx = {x: k for k, x in enumerate(elements)}
        leq = transitive_closure(len(elements), [(idx[b], idx[a]) for a, b in rel])
        covers = covers_from_leq_matrix(leq)
        poset = IrreduciblePoset(
            tuple(elements),
            frozenset(rel),
            frozenset((elements[a], elements[b]) for a, b in covers),
            m,
            D,
        )
        count = len(ideal_lattice(leq).elements)
        if count != len(self.elements):
            raise AssertionError(f"{count} order ideals but {len(self.elements)} lattice elements")
        return poset


def filter_orientations(graph: MultiGraph, circ: Circulation, limit: int = DEFAULT_MAX_ELEMENTS) -> list:
    """Exhaustive search over free-edge directions matching ``circ`` on its basis."""
    g = graph
    free = [i for i, e in enumerate(g.edges) if e not in g.pinned]
    pos = {ei: k for k, ei in enumerate(free)}
    base = [0] * g.n_edges
    for e, d in g.pinned.items():
        base[g.eindex[e]] = 0 if (d.tail, d.head) == g.ends[e] else 1
    # per basis cycle: signed coefficients on free edges, constant from pins
    cycles = []
    for cyc, val in zip(circ.basis.cycles, circ.values):
        const = 0
        coef = {}
        for d in cyc:
            ei = g.eindex[d.edge]
            sign = 1 if (d.tail, d.head) == g.ends[d.edge] else -1
            if ei in pos:
                coef[pos[ei]] = coef.get(pos[ei], 0) + sign
            else:
                const += sign * (1 if base[ei] == 0 else -1)
        cycles.append((coef, val - const))
    k = len(free)
    # touching[p]: cycles with a coefficient at free position p
    touching = [[] for _ in range(k)]
    for ci, (coef, _) in enumerate(cycles):
        for p, a in coef.items():
            touching[p].append((ci, a))
    remaining = [sum(abs(a) for a in coef.values()) for coef, _ in cycles]
    target = [t for _, t in cycles]
    partial = [0] * len(cycles)
    if any(abs(target[c]) > remaining[c] or (target[c] - remaining[c]) % 2 for c in range(len(cycles))):
        return []
    bits = list(base)
    out = []

    def rec(p):
        if p == k:
            out.append(Orientation(g, bits))
            if len(out) > limit:
                raise TooLarge(f"more than {limit} orientations")
            return
        for b in (0, 1):
            s = 1 if b == 0 else -1
            ok = True
            for ci, a in touching[p]:
                partial[ci] += a * s
                remaining[ci] -= abs(a)
                if abs(target[ci] - partial[ci]) > remaining[ci]:
                    ok = False
            if ok:
                bits[free[p]] = b
                rec(p + 1)
            for ci, a in touching[p]:
                partial[ci] -= a * s
                remaining[ci] += abs(a)

    rec(0)
    return sorted(out)


# --- module-level forms of the lattice operations ----------------------------

def enumerate_c_orientations(c: Circulation, vstar=None, **kw) -> list:
    return OrientationLattice(c.reference, vstar, **kw).elements


def extremes(c: Circulation, vstar=None, **kw):
    return OrientationLattice(c.reference, vstar, **kw).extremes()


def hasse_diagram(c: Circulation, vstar=None, **kw) -> HasseDiagram:
    return OrientationLattice(c.reference, vstar, **kw).hasse_diagram()
