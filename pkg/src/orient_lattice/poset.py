"""Finite posets: Hasse diagrams, gradings, order ideals, lattice-table checks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Sequence

import networkx as nx
import numpy as np

from .errors import NotGraded


@dataclass(frozen=True)
class HasseDiagram:
    """Elements in canonical order plus covers as ``(upper, lower)`` index pairs."""

    elements: tuple
    covers: frozenset
    rank: tuple | None = None
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.elements)})

    def __len__(self):
        return len(self.elements)

    def index(self, x) -> int:
        return self._index[x]

    def lower_covers(self, i) -> list:
        return sorted(lo for up, lo in self.covers if up == i)

    def upper_covers(self, i) -> list:
        return sorted(up for up, lo in self.covers if lo == i)

    def digraph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.elements)))
        g.add_edges_from(self.covers)
        return g

    def bottoms(self) -> list:
        has_lower = {up for up, _ in self.covers}
        return [i for i in range(len(self.elements)) if i not in has_lower]

    def tops(self) -> list:
        has_upper = {lo for _, lo in self.covers}
        return [i for i in range(len(self.elements)) if i not in has_upper]

    def leq_matrix(self) -> np.ndarray:
        """Boolean matrix ``m[i, j]`` meaning element i <= element j."""
        n = len(self.elements)
        m = np.eye(n, dtype=bool)
        order = list(nx.topological_sort(self.digraph()))  # uppers first
        ups = {i: set() for i in range(n)}
        for up, lo in self.covers:
            ups[lo].add(up)
        for i in order:
            for up in ups[i]:
                m[i] |= m[up]
        return m

    def is_isomorphic(self, other: "HasseDiagram") -> bool:
        return nx.is_isomorphic(self.digraph(), other.digraph())


def covers_from_order(n: int, leq: Callable[[int, int], bool]) -> frozenset:
    """Cover pairs ``(upper, lower)`` of the order given by ``leq``."""
    m = np.array([[leq(i, j) for j in range(n)] for i in range(n)], dtype=bool).reshape(n, n)
    return covers_from_leq_matrix(m)


def covers_from_leq_matrix(m: np.ndarray) -> frozenset:
    """Cover pairs from a reflexive order matrix ``m[i, j] = i <= j``."""
    n = m.shape[0]
    strict = m & ~np.eye(n, dtype=bool)
    covers = set()
    for i in range(n):
        lows = np.flatnonzero(strict[:, i])
        for j in lows:
            # j < i is a cover unless some k has j < k < i
            if not np.any(strict[j, lows]):
                covers.add((i, int(j)))
    return frozenset(covers)


def graded_rank(n: int, covers) -> list:
    """Rank function normalised to min 0; raises NotGraded if none exists."""
    adj = {i: [] for i in range(n)}
    for up, lo in covers:
        adj[up].append((lo, -1))
        adj[lo].append((up, 1))
    rank = [None] * n
    for start in range(n):
        if rank[start] is not None:
            continue
        rank[start] = 0
        queue = deque([start])
        comp = [start]
        while queue:
            i = queue.popleft()
            for j, d in adj[i]:
                if rank[j] is None:
                    rank[j] = rank[i] + d
                    comp.append(j)
                    queue.append(j)
                elif rank[j] != rank[i] + d:
                    raise NotGraded(f"elements {i} and {j} admit no consistent rank")
        low = min(rank[i] for i in comp)
        for i in comp:
            rank[i] -= low
    return rank


def rank_generating_function(h: HasseDiagram) -> tuple:
    """Coefficients ``(c0, c1, ...)`` of the sum of q**rank over elements."""
    rank = graded_rank(len(h.elements), h.covers)
    coeffs = [0] * (max(rank, default=-1) + 1)
    for r in rank:
        coeffs[r] += 1
    return tuple(coeffs)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def poly_pow(a: Sequence[int], k: int) -> tuple:
    out = (1,)
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def format_poly(coeffs: Sequence[int], var: str = "q") -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms) or "0"


def transitive_closure(n: int, pairs) -> np.ndarray:
    """Reflexive-transitive closure ``m[i, j] = i <= j`` from ``(lower, upper)`` pairs."""
    m = np.eye(n, dtype=bool)
    for lo, up in pairs:
        m[lo, up] = True
    for k in range(n):
        m |= np.outer(m[:, k], m[k, :])
    return m


def order_ideals(leq: np.ndarray) -> list:
    """All down-sets of the poset ``leq[i, j] = i <= j``, as frozensets."""
    n = leq.shape[0]
    # linear extension: fewer elements below first
    order = sorted(range(n), key=lambda i: int(leq[:, i].sum()))
    below = [[j for j in range(n) if j != i and leq[j, i]] for i in range(n)]
    out = []

    def rec(k, chosen):
        if k == n:
            out.append(frozenset(chosen))
            return
        x = order[k]
        rec(k + 1, chosen)
        if all(y in chosen for y in below[x]):
            chosen.add(x)
            rec(k + 1, chosen)
            chosen.discard(x)

    rec(0, set())
    return out


def ideal_lattice(leq: np.ndarray) -> HasseDiagram:
    """J(P) ordered by inclusion, covers adding one element."""
    ideals = sorted(order_ideals(leq), key=lambda s: (len(s), sorted(s)))
    index = {s: i for i, s in enumerate(ideals)}
    covers = set()
    for s in ideals:
        for x in range(leq.shape[0]):
            if x not in s:
                t = s | {x}
                if t in index:
                    covers.add((index[t], index[s]))
    rank = tuple(len(s) for s in ideals)
    return HasseDiagram(tuple(ideals), frozenset(covers), rank)


def check_lattice_tables(meet: np.ndarray, join: np.ndarray, leq: np.ndarray) -> list:
    """Verify lattice and distributivity axioms on full operation tables.

    Returns a list of failure messages (empty when every axiom holds).
    """
    n = meet.shape[0]
    problems = []
    idx = np.arange(n)
    if not np.array_equal(meet[idx, idx], idx) or not np.array_equal(join[idx, idx], idx):
        problems.append("idempotence")
    if not np.array_equal(meet, meet.T) or not np.array_equal(join, join.T):
        problems.append("commutativity")
    if not np.array_equal(join[idx[:, None], meet], np.broadcast_to(idx[:, None], (n, n))):
        problems.append("absorption x v (x ^ y) = x")
    if not np.array_equal(meet[idx[:, None], join], np.broadcast_to(idx[:, None], (n, n))):
        problems.append("absorption x ^ (x v y) = x")
    # meet is the greatest lower bound w.r.t. leq
    for i in range(n):
        lower = leq[:, i][:, None] & leq  # lower[k, j]: k <= i and k <= j
        for j in range(n):
            m = meet[i, j]
            common = np.flatnonzero(lower[:, j])
            if not leq[m, i] or not leq[m, j] or not np.all(leq[common, m]):
                problems.append(f"meet({i},{j}) is not the glb")
                return problems
            up_common = np.flatnonzero(leq[i, :] & leq[j, :])
            jn = join[i, j]
            if not np.all(leq[jn, up_common]):
                problems.append(f"join({i},{j}) is not the lub")
                return problems
    x = idx[:, None, None]
    y = idx[None, :, None]
    z = idx[None, None, :]
    if not np.array_equal(meet[meet[x, y], z], meet[x, meet[y, z]]):
        problems.append("meet associativity")
    if not np.array_equal(join[join[x, y], z], join[x, join[y, z]]):
        problems.append("join associativity")
    if not np.array_equal(meet[x, join[y, z]], join[meet[x, y], meet[x, z]]):
        problems.append("distributivity x ^ (y v z) = (x ^ y) v (x ^ z)")
    if not np.array_equal(join[x, meet[y, z]], meet[join[x, y], join[x, z]]):
        problems.append("distributivity x v (y ^ z) = (x v y) ^ (x v z)")
    return problems


def join_irreducible_indices(h: HasseDiagram) -> list:
    """Elements with exactly one lower cover."""
    n_low = [0] * len(h.elements)
    for up, _ in h.covers:
        n_low[up] += 1
    return [i for i, k in enumerate(n_low) if k == 1]
