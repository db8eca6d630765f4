"""Invariant suite run by ``verify``: every check reports a counterexample or passes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import networkx as nx

from .errors import LatticeError, NotAcyclic, NotOuterHamiltonian
from .families import Instance
from .graph import (
    accessibility_partition,
    cycle_basis,
    dual_graph,
    embedding,
    is_isomorphic_embedded,
)
from .matchings import DFactorLattice
from .orientations import (
    Circulation,
    OrientationLattice,
    average_bias,
    is_c_orientation,
)
from .poset import graded_rank, poly_pow, rank_generating_function
from .tilings import (
    asm_of_orientation,
    domino_height,
    is_asm,
    region_boundary_points,
)
from .torus import TorusDimers, is_extremal, torus_instance
from .trees import CrossingTrees, TreeLattice, outer_cycle


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def build(inst: Instance):
    """The lattice-like object matching the instance kind."""
    if inst.kind == "orientation":
        return OrientationLattice(inst.reference, inst.vstar, inst.bias)
    if inst.kind == "dfactor":
        return DFactorLattice(inst.graph, inst.degrees, inst.fstar, coloring=inst.coloring)
    if inst.kind == "tree":
        return TreeLattice(inst.graph, inst.vstar, inst.fstar)
    if inst.kind == "crossing":
        return CrossingTrees(inst.graph, inst.vstar if inst.vstar is not None else inst.graph.vertices[0])
    if inst.kind == "torus":
        return TorusDimers(inst.torus, inst.degrees, inst.coloring)
    raise ValueError(f"unknown instance kind {inst.kind!r}")


def _first(items, pred, fmt):
    for x in items:
        if not pred(x):
            return fmt(x)
    return None


# --- graph checks ---------------------------------------------------------------

def check_graph(g, surface="sphere") -> dict:
    out = {}

    def basis():
        b = cycle_basis(g)
        want = g.n_edges - g.n_vertices + 1
        if len(b) != want:
            return f"cycle basis has {len(b)} cycles, expected {want}"
        for cyc in b.cycles:
            if cyc[0].tail != cyc[-1].head or any(a.head != b2.tail for a, b2 in zip(cyc, cyc[1:])):
                return f"basis cycle {cyc!r} does not close"
        return None

    out["cycle basis size"] = basis
    if g.rotation is None:
        return out

    def euler():
        emb = embedding(g, surface)
        want = 2 if surface == "sphere" else 0
        if emb.euler != want:
            return f"Euler characteristic {emb.euler}, expected {want}"
        sides = {}
        for f in emb.faces:
            for d in f.boundary:
                sides[d.edge] = sides.get(d.edge, 0) + 1
        bad = [e for e in g.edges if sides.get(e) != 2]
        return f"edge {bad[0]!r} appears {sides.get(bad[0], 0)} times on face boundaries" if bad else None

    def involution():
        d1, _ = dual_graph(g, surface)
        d2, _ = dual_graph(d1, surface)
        if not is_isomorphic_embedded(g, d2, {e: e for e in g.edges}):
            return "double dual is not the original graph"
        return None

    out["Euler characteristic and face sides"] = euler
    emb = embedding(g, surface)
    if all(emb.left_face(g.canonical(e)) != emb.right_face(g.canonical(e)) for e in g.edges):
        out["double dual"] = involution
    return out


# --- orientation lattices ---------------------------------------------------------

def orientation_checks(inst: Instance, L: OrientationLattice) -> dict:
    g = L.graph
    c = L.circulation
    els = L.elements

    def enumeration():
        if not els:
            return "no orientations"
        return _first(els, lambda r: is_c_orientation(r, c) and r.respects_pins(),
                      lambda r: f"{r!r} has the wrong circulation or breaks a pin")

    def partition():
        base = accessibility_partition(els[0])
        return _first(els, lambda r: accessibility_partition(r) == base,
                      lambda r: f"{r!r} has a different accessibility partition")

    def push_circulation():
        for r in els:
            for k in L.maximal_class_ids(r):
                s = L._flip_class(r, k)
                if Circulation.of(s).values != c.values:
                    return f"pushing class {sorted(L.classes[k])!r} of {r!r} changes the circulation"
        return None

    def integer_differences():
        h0 = L.height(els[0])
        for r in els:
            h = L.height(r)
            for v in g.vertices:
                if (h[v] - h0[v]).denominator != 1:
                    return f"height difference at {v!r} is {h[v] - h0[v]} for {r!r}"
        return None

    def adjacent_offsets():
        H = {r: L.height(r) for r in els}
        low = {v: min(H[r][v] for r in els) for v in g.vertices}
        m = {v: low[v] - (low[v].numerator // low[v].denominator) for v in g.vertices}
        for e in g.edges:
            a, b = g.ends[e]
            if L.class_of[a] == L.class_of[b]:
                continue
            v, w = (a, b) if m[a] < m[b] else (b, a)
            if m[v] == m[w]:
                return f"endpoints of free edge {e!r} have equal offsets"
            if not m[v] < m[w] < m[v] + 1:
                return f"offsets {m[v]}, {m[w]} at edge {e!r} are out of range"
            for r in els:
                i, j = H[r][v] - m[v], H[r][w] - m[w]
                if j not in (i - 1, i):
                    return f"heights ({H[r][v]}, {H[r][w]}) at edge {e!r} in {r!r}"
        return None

    def distributive():
        bad = L.check_lattice()
        return bad[0] if bad else None

    def push_is_cover():
        L.hasse_diagram(check=True)
        return None

    def greedy_descent():
        for r, s in itertools.product(els, repeat=2):
            if L.compare(r, s) != "greater":
                continue
            if not any(L.compare(L._flip_class(r, k), s) in ("greater", "equal")
                       for k in L.maximal_class_ids(r)):
                return f"no push from {r!r} stays above {s!r}"
        return None

    def free_edges_both_ways():
        forced = {d.edge for d in L.forced}
        for e in g.edges:
            if e in forced or e in g.pinned:
                continue
            dirs = {r.direction(e) for r in els}
            if len(dirs) != 2:
                return f"free edge {e!r} only ever points {dirs.pop()!r}"
        return None

    def extremes():
        h = L.hasse_diagram(check=False)
        if len(h.bottoms()) != 1 or len(h.tops()) != 1:
            return f"{len(h.bottoms())} minimal and {len(h.tops())} maximal elements"
        if L.maximal_class_ids(L.bottom) or L.minimal_class_ids(L.top):
            return "an extreme element still admits a push"
        return None

    def anchor_independence():
        base = L.leq_matrix()
        for v in sorted(L.astar, key=g.vindex.get):
            if v == L.vstar or v in g.boundary_vertices:
                continue
            other = OrientationLattice(L.reference, v, L.bias, elements=els)
            if (other.leq_matrix() != base).any():
                return f"moving the anchor to {v!r} changes the order"
        return None

    def bias():
        # pinned edges keep any registered weight; only circulation-forced ones must be 0 or 1
        forced = {d for d in L.forced if d.edge not in g.pinned}
        avg = average_bias(els)
        avg.check(c, L.forced)
        L.bias.check(c, forced)
        if inst.bias is not None and not g.pinned:
            diff = [e for i, e in enumerate(g.edges) if inst.bias.forward[i] != avg.forward[i]]
            if diff:
                e = diff[0]
                return (f"registered bias {inst.bias.forward[g.eindex[e]]} on {e!r} differs from "
                        f"the average {avg.forward[g.eindex[e]]}")
        return None

    def rank_function():
        phi = L.rank_affine()
        return _first(els, lambda r: phi(r) == L.ranks[r],
                      lambda r: f"affine rank {phi(r)} differs from rank {L.ranks[r]} at {r!r}")

    def move_bound():
        n = g.n_vertices
        bound = n * (n - 1) // 2
        d = L.cover_distance(L.bottom, L.top)
        if d > bound:
            return f"bottom and top are {d} moves apart, above {bound}"
        return None

    def irreducibles():
        if not L.is_acyclic:
            return None
        try:
            L.join_irreducibles()
        except NotAcyclic:
            pass
        return None

    checks = {
        "enumeration respects circulation and pins": enumeration,
        "accessibility partition is shared": partition,
        "pushes preserve circulation": push_circulation,
        "height differences are integers": integer_differences,
        "adjacent height offsets": adjacent_offsets,
        "meet and join are distributive lattice operations": distributive,
        "push-down covers equal order covers": push_is_cover,
        "some push descends toward any lower element": greedy_descent,
        "free edges occur in both directions": free_edges_both_ways,
        "unique bottom and top": extremes,
        "order independent of anchor within its class": anchor_independence,
        "bias properties": bias,
        "affine rank function": rank_function,
        "bottom-to-top distance bound": move_bound,
        "order ideals of join-irreducibles": irreducibles,
    }
    if inst.family == "grid_pinned":
        n = inst.params["n"]

        def asms():
            mats = set()
            for r in els:
                a = asm_of_orientation(L, r, n)
                if not is_asm(a):
                    return f"{r!r} gives a non-ASM {a!r}"
                mats.add(a)
            if len(mats) != len(els):
                return "two orientations give the same matrix"
            return None

        checks["alternating sign matrices"] = asms
    return checks


# --- d-factor lattices ---------------------------------------------------------------

def dfactor_checks(inst: Instance, D: DFactorLattice) -> dict:
    factors = D.factors

    def bijection():
        return _first(factors, lambda m: D.dfactor_of_orientation(D.orientation_of_dfactor(m)) == frozenset(m),
                      lambda m: f"d-factor {sorted(m)!r} does not survive the round trip")

    def vertex_circulations():
        for m in factors:
            for v in D.graph.vertices:
                D.vertex_circulation(m, v)
        return None

    def twist_is_push():
        D.hasse_diagram(check=True)
        return None

    def alternating():
        for m in factors:
            pos, neg = D.alternating_faces(m)
            if not pos or not neg:
                return f"d-factor {sorted(m)!r} lacks a positive or a negative alternating face"
        return None

    def face_heights():
        D.face_height_offsets()
        h = D.hasse_diagram(check=False)
        for up, lo in h.covers:
            a, b = D.face_height(h.elements[up]), D.face_height(h.elements[lo])
            diff = [f for f in a if a[f] != b[f]]
            if len(diff) != 1 or abs(a[diff[0]] - b[diff[0]]) != 1:
                return f"a twist changes face heights at {diff!r}"
        return None

    checks = {
        "duality round trip": bijection,
        "vertex circulations": vertex_circulations,
        "twists equal pushes": twist_is_push,
        "positive and negative alternating faces": alternating,
        "twists move one face height by one": face_heights,
    }
    dual = Instance(inst.family, inst.params, "orientation", D.dual)
    checks.update({f"dual {k}": v for k, v in orientation_checks(dual, D.lattice).items()})
    if inst.region is not None and inst.region.kind == "squares":
        reg = inst.region

        def dominoes():
            bnd = region_boundary_points(reg)
            H = {D.key(m): domino_height(reg, m) for m in factors}
            ref = H[D.key(factors[0])]
            for m in factors:
                h = H[D.key(m)]
                if any(h[p] != ref[p] for p in bnd):
                    return f"boundary heights differ for tiling {sorted(m)!r}"
            hd = D.hasse_diagram(check=False)
            g = nx.Graph()
            g.add_nodes_from(range(len(hd)))
            for up, lo in hd.covers:
                g.add_edge(up, lo)
                a, b = H[D.key(hd.elements[up])], H[D.key(hd.elements[lo])]
                diff = [p for p in a if a[p] != b[p]]
                if len(diff) != 1 or diff[0] in bnd or abs(a[diff[0]] - b[diff[0]]) != 1:
                    return f"a twist changes domino heights at {diff!r}"
            if not nx.is_connected(g):
                return "tilings are not twist-connected"
            return None

        checks["domino heights"] = dominoes
    return checks


# --- spanning trees -------------------------------------------------------------------

def tree_checks(inst: Instance, T: TreeLattice) -> dict:
    E = T.trees

    def counts():
        det = round(nx.number_of_spanning_trees(nx.MultiGraph([T.graph.ends[e] for e in T.graph.edges])))
        if not len(T) == len(T.matchings.factors) == det:
            return f"{len(T)} trees, {len(T.matchings.factors)} matchings, determinant {det}"
        return None

    def swing_is_twist():
        T.hasse_diagram()
        return None

    def temperley_square():
        for t in T.elements:
            m = T.matching(t)
            for a in E.pivotal_angles(t):
                lhs = T.matching(E.swing_down(t, a))
                rhs = T.matchings.twist_down(m, T.h.quad[(a.vertex, a.edge)])
                if lhs != rhs:
                    return f"swing at {(a.vertex, a.edge)!r} of {sorted(t)!r} is not the twist"
        return None

    def pivotal_conditions():
        for t in T.elements:
            p = E.arborescence_pair(t)
            for a in E.angles:
                if E.is_pivotal(p, a) != E.pivotal_by_conditions(t, a):
                    return f"membership test and conditions disagree at {(a.vertex, a.edge)!r} of {sorted(t)!r}"
        return None

    def swing_runs():
        for t in T.elements:
            for v in T.graph.vertices:
                k = E.longest_swing_run(t, v)
                if k > T.graph.degree(v) - 1:
                    return f"{k} consecutive swings at {v!r} from {sorted(t)!r}"
        return None

    def distributive():
        bad = T.matchings.lattice.check_lattice()
        return bad[0] if bad else None

    checks = {
        "tree, matching and determinant counts": counts,
        "swing covers equal twist covers": swing_is_twist,
        "swing and twist commute with the bijection": temperley_square,
        "pivotal test equals defining conditions": pivotal_conditions,
        "consecutive swings at a vertex": swing_runs,
        "distributive lattice": distributive,
    }
    try:
        outer_cycle(E)
    except NotOuterHamiltonian:
        return checks

    def convex():
        for t in T.elements:
            for a in E.angles:
                if a.face == E.fstar:
                    continue
                if E.pivotal_by_conditions(t, a, False) != E.pivotal_by_conditions(t, a, True):
                    return f"face condition is not implied at {(a.vertex, a.edge)!r} of {sorted(t)!r}"
        return None

    def angles():
        T.angle_poset()
        return None

    checks["face condition implied for outer cycles"] = convex
    checks["angle poset equals join-irreducibles"] = angles
    return checks


def crossing_checks(inst: Instance, C: CrossingTrees) -> dict:
    n = C.n

    def graded():
        h = C.hasse_diagram()
        graded_rank(len(h), h.covers)
        if C.graph.n_edges == n * (n - 1) // 2:
            want = poly_pow(tuple([1] * n), n - 2)
            got = rank_generating_function(h)
            if got != want:
                return f"rank generating function {got!r}, expected {want!r}"
        return None

    return {"graded with the expected rank polynomial": graded}


# --- torus ------------------------------------------------------------------------------

def torus_checks(inst: Instance, TD: TorusDimers) -> dict:
    diagram = TD.phase_diagram()

    def twists_keep_class():
        for m in TD.factors:
            h = TD.cohomology_of(m)
            for f, n in TD.twists(m):
                if TD.cohomology_of(n) != h:
                    return f"twist at face {f} changes cohomology from {h!r}"
        return None

    def representatives():
        tg = TD.tg
        other = torus_instance(tg.rows, tg.cols, row=1 % tg.rows, col=1 % tg.cols)
        for m in TD.factors:
            if TD.cohomology_of(m) != TD.cohomology_of(m, other.g1, other.g2):
                return f"cohomology of {sorted(m)!r} depends on the generator representatives"
        return None

    def forward_cycles():
        for m in TD.factors:
            cyc = TD.noncontractible_forward_cycle(TD.orientation(m))
            if cyc is not None and not is_extremal(TD.cohomology_of(m), diagram):
                return f"{sorted(m)!r} has a winding forward cycle but is not extremal"
        return None

    def components():
        by_class = {}
        for comp in TD.twist_components():
            by_class.setdefault(TD.cohomology_of(comp[0]), []).append(comp)
        for h, comps in sorted(by_class.items()):
            if len({TD.cohomology_of(m) for c in comps for m in c}) != 1:
                return f"a twist component mixes cohomology classes near {h!r}"
            if not is_extremal(h, diagram) and len(comps) != 1:
                return f"non-extremal class {h!r} splits into {len(comps)} components"
        return None

    return {
        "twists preserve cohomology": twists_keep_class,
        "cohomology independent of representatives": representatives,
        "winding forward cycles only in extremal classes": forward_cycles,
        "non-extremal classes are twist-connected": components,
    }


# --- driver ---------------------------------------------------------------------------

def all_checks(inst: Instance) -> dict:
    obj = build(inst)
    surface = "torus" if inst.kind == "torus" else "sphere"
    checks = {} if inst.kind == "crossing" else check_graph(inst.graph, surface)
    if inst.kind == "orientation":
        checks.update(orientation_checks(inst, obj))
    elif inst.kind == "dfactor":
        checks.update(dfactor_checks(inst, obj))
    elif inst.kind == "tree":
        checks.update(tree_checks(inst, obj))
    elif inst.kind == "crossing":
        checks.update(crossing_checks(inst, obj))
    elif inst.kind == "torus":
        checks.update(torus_checks(inst, obj))
    return checks


def run_checks(inst: Instance) -> list:
    results = []
    for name, fn in all_checks(inst).items():
        try:
            detail = fn()
        except (AssertionError, LatticeError) as exc:
            detail = f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, detail is None, detail or ""))
    return results


__all__ = ["CheckResult", "all_checks", "build", "run_checks"]
