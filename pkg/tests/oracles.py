"""Independent reference computations used to check the library.

Nothing here imports the lattice code; everything is brute force over small
objects so that agreement is meaningful.
"""

from __future__ import annotations

import itertools
from collections import deque

import networkx as nx
import sympy


# --- posets -------------------------------------------------------------------

def cover_digraph(elements, leq) -> nx.DiGraph:
    """Hasse diagram (edges upper -> lower) of ``leq`` on ``elements``."""
    g = nx.DiGraph()
    g.add_nodes_from(range(len(elements)))
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            if i == j or not leq(y, x):
                continue
            if not any(k not in (i, j) and leq(y, z) and leq(z, x) for k, z in enumerate(elements)):
                g.add_edge(i, j)
    return g


def library_digraph(h) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(len(h.elements)))
    g.add_edges_from(h.covers)
    return g


def rank_counts(g: nx.DiGraph) -> tuple:
    """Number of elements at each distance from the unique sink (the bottom)."""
    bottom = [v for v in g if g.out_degree(v) == 0]
    assert len(bottom) == 1
    dist = nx.single_source_shortest_path_length(g.reverse(), bottom[0])
    out = [0] * (max(dist.values()) + 1)
    for d in dist.values():
        out[d] += 1
    return tuple(out)


# --- partitions and Young lattices ------------------------------------------------

def distinct_part_partitions(n: int) -> list:
    """Partitions into distinct parts, each at most n, as decreasing tuples."""
    out = []
    for k in range(n + 1):
        for parts in itertools.combinations(range(n, 0, -1), k):
            out.append(parts)
    return out


def young_leq(a, b) -> bool:
    """Containment of Young diagrams."""
    if len(a) > len(b):
        return False
    return all(x <= y for x, y in zip(a, b))


def box_partitions(rows: int, cols: int) -> list:
    """Partitions fitting in a rows x cols box, i.e. order ideals of the grid poset."""
    return [p for p in itertools.product(range(cols + 1), repeat=rows)
            if all(p[i] >= p[i + 1] for i in range(rows - 1))]


def padded_leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def gaussian_binomial(n: int, k: int) -> tuple:
    """Coefficients of [n choose k]_q by the q-Pascal recursion."""
    q = sympy.Symbol("q")

    def rec(n, k):
        if k == 0 or k == n:
            return sympy.Integer(1)
        return sympy.expand(rec(n - 1, k - 1) + q ** k * rec(n - 1, k))

    poly = sympy.Poly(rec(n, k), q)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def chain_product_ideals(a: int, b: int, c: int) -> list:
    """Order ideals of the product of chains of sizes a, b, c, as frozensets."""
    pts = list(itertools.product(range(a), range(b), range(c)))
    out = []
    for bits in itertools.product((0, 1), repeat=len(pts)):
        s = {p for p, x in zip(pts, bits) if x}
        if all(q in s for p in s for q in pts if all(qi <= pi for qi, pi in zip(q, p))):
            out.append(frozenset(s))
    return out


# --- orientations -----------------------------------------------------------------

def all_orientations_like(graph, reference) -> list:
    """Every orientation (as a bit tuple) with the circulation and pins of ``reference``.

    Two orientations have equal circulation on every cycle exactly when the
    edgewise difference of their indicator vectors is a potential difference.
    Edges are assigned in breadth-first order and a branch is dropped as soon
    as the potential becomes inconsistent.
    """
    root = graph.vertices[0]
    order, seen = [], {root}
    queue = deque([root])
    used = set()
    while queue:
        x = queue.popleft()
        for e in graph.edges:
            if e in used or x not in graph.ends[e]:
                continue
            used.add(e)
            order.append(e)
            u, v = graph.ends[e]
            y = v if u == x else u
            if y not in seen:
                seen.add(y)
                queue.append(y)
    pos = {e: i for i, e in enumerate(graph.edges)}
    ref = reference.bits
    out = []

    def rec(k, bits, pot):
        if k == len(order):
            out.append(tuple(bits[pos[e]] for e in graph.edges))
            return
        e = order[k]
        u, v = graph.ends[e]
        choices = (0, 1)
        if e in graph.pinned:
            choices = (0,) if graph.pinned[e].tail == u else (1,)
        for b in choices:
            d = 2 * (b - ref[pos[e]])  # potential difference from u to v
            if u in pot and v in pot:
                if pot[v] - pot[u] != d:
                    continue
                bits[pos[e]] = b
                rec(k + 1, bits, pot)
            else:
                new = dict(pot)
                if u in pot:
                    new[v] = pot[u] + d
                else:
                    new[u] = pot[v] - d
                bits[pos[e]] = b
                rec(k + 1, bits, new)

    rec(0, [0] * len(graph.edges), {root: 0})
    return sorted(out)


# --- matchings and trees ------------------------------------------------------------

def perfect_matchings(graph) -> list:
    """All perfect matchings, by branching on the lowest unmatched vertex."""
    order = list(graph.vertices)
    incident = {v: [e for e in graph.edges if v in graph.ends[e]] for v in order}
    out = []

    def rec(matched, chosen):
        free = next((v for v in order if v not in matched), None)
        if free is None:
            out.append(frozenset(chosen))
            return
        for e in incident[free]:
            u, v = graph.ends[e]
            w = v if u == free else u
            if w not in matched:
                rec(matched | {free, w}, chosen + [e])

    rec(frozenset(), [])
    return out


def matrix_tree_count(graph) -> int:
    """Exact determinant of a reduced Laplacian."""
    vs = list(graph.vertices)
    idx = {v: i for i, v in enumerate(vs)}
    n = len(vs)
    lap = sympy.zeros(n, n)
    for e in graph.edges:
        u, v = graph.ends[e]
        i, j = idx[u], idx[v]
        lap[i, i] += 1
        lap[j, j] += 1
        lap[i, j] -= 1
        lap[j, i] -= 1
    return int(lap[1:, 1:].det()) if n > 1 else 1


def spanning_tree_sets(graph) -> list:
    n = len(graph.vertices)
    out = []
    for es in itertools.combinations(graph.edges, n - 1):
        g = nx.MultiGraph()
        g.add_nodes_from(graph.vertices)
        g.add_edges_from(graph.ends[e] for e in es)
        if nx.is_connected(g):
            out.append(frozenset(es))
    return out


# --- permutations and ASMs ------------------------------------------------------------

def inversions(p) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def weak_order_cover_graph(n: int, side: str) -> set:
    """Undirected cover edges of the weak order on S_n.

    ``side = "right"`` swaps adjacent positions, ``"left"`` adjacent values.
    """
    perms = list(itertools.permutations(range(n)))
    edges = set()
    for p in perms:
        for i in range(n - 1):
            if side == "right":
                q = list(p)
                q[i], q[i + 1] = q[i + 1], q[i]
            else:
                q = [i + 1 if x == i else i if x == i + 1 else x for x in p]
            q = tuple(q)
            if inversions(q) == inversions(p) + 1:
                edges.add(frozenset((p, q)))
    return edges


def asm_brute(n: int) -> list:
    """All n x n alternating sign matrices by direct search."""
    out = []
    for entries in itertools.product((-1, 0, 1), repeat=n * n):
        a = [entries[i * n:(i + 1) * n] for i in range(n)]
        lines = a + [tuple(a[i][j] for i in range(n)) for j in range(n)]
        good = True
        for line in lines:
            partial = 0
            for x in line:
                partial += x
                if partial not in (0, 1):
                    good = False
                    break
            if not good or partial != 1:
                good = False
                break
        if good:
            out.append(tuple(tuple(r) for r in a))
    return out


def strong_bruhat_cover_graph(n: int) -> set:
    """Undirected cover edges of the strong Bruhat order: one transposition, length up by one."""
    perms = list(itertools.permutations(range(n)))
    edges = set()
    for p in perms:
        for i, j in itertools.combinations(range(n), 2):
            q = list(p)
            q[i], q[j] = q[j], q[i]
            q = tuple(q)
            if inversions(q) == inversions(p) + 1:
                edges.add(frozenset((p, q)))
    return edges


def induced_cover_graph(items, leq) -> set:
    """Undirected cover edges of ``leq`` restricted to ``items``."""
    g = cover_digraph(items, leq)
    return {frozenset((items[a], items[b])) for a, b in g.edges}


def q_integer_power(n: int, k: int) -> tuple:
    """Coefficients of (1 + q + ... + q^(n-1))^k."""
    q = sympy.Symbol("q")
    poly = sympy.Poly(sympy.expand(sum(q ** i for i in range(n)) ** k), q)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))
