"""Named instance families with their conventional anchors, pins and biases."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BadParams
from .graph import MultiGraph, embedding, grid_graph
from .orientations import EdgeBias, Orientation
from .tilings import Region, aztec_diamond, hexagon_region
from .torus import TorusGraph, torus_instance
from .trees import kn_graph

FAMILIES = (
    "cycle",
    "path",
    "grid_pinned",
    "hexagon",
    "aztec",
    "torus_grid",
    "kn_outer",
    "square_with_chord",
)
ALIASES = {"grid": "grid_pinned", "kn": "kn_outer", "torus": "torus_grid"}


@dataclass
class Instance:
    """A graph together with everything needed to build its lattice.

    ``kind`` is one of ``orientation``, ``dfactor``, ``tree``, ``torus`` or
    ``crossing``.  ``fstar`` is a dart ``(edge, tail)`` whose left face is meant.
    """

    family: str
    params: dict
    kind: str
    graph: MultiGraph
    vstar: object = None
    fstar: tuple | None = None
    reference: Orientation | None = None
    degrees: dict | None = None
    bias: EdgeBias | None = None
    coloring: dict | None = None
    region: Region | None = None
    torus: TorusGraph | None = None
    extra: dict = field(default_factory=dict)


def _check(cond, msg):
    if not cond:
        raise BadParams(msg)


def polygon(n: int) -> MultiGraph:
    """Cycle on vertices 0..n-1 placed clockwise; edge i joins i and i+1."""
    edges = [(i, i, (i + 1) % n) for i in range(n)]
    rotation = {i: [(i - 1) % n, i] for i in range(n)}
    return MultiGraph(range(n), edges, rotation)


def cycle(n: int, k: int) -> Instance:
    """n-cycle with k edges counterclockwise; bias k/n on counterclockwise darts."""
    _check(n >= 3, "cycle needs n >= 3")
    _check(0 <= k <= n, "cycle needs 0 <= k <= n")
    g = polygon(n)
    ref = Orientation(g, [1 if i < k else 0 for i in range(n)])
    # bit 1 is the counterclockwise dart (i+1 -> i)
    bias = EdgeBias(g, [Fraction(n - k, n)] * n)
    return Instance("cycle", {"n": n, "k": k}, "orientation", g, 0, (0, 0), ref, bias=bias)


def path(n: int) -> Instance:
    _check(n >= 1, "path needs n >= 1")
    edges = [(i, i, i + 1) for i in range(n)]
    rotation = {v: [e for e in (v - 1, v) if 0 <= e < n] for v in range(n + 1)}
    g = MultiGraph(range(n + 1), edges, rotation)
    ref = Orientation(g, [0] * n)
    return Instance("path", {"n": n}, "orientation", g, n, None, ref,
                    bias=EdgeBias.uniform(g))


def grid_pinned(n: int) -> Instance:
    """(n+1) x (n+1) grid whose boundary points right on top, left on the
    bottom, down on the left and up on the right; bias 1/2 everywhere."""
    _check(n >= 1, "grid needs n >= 1")
    g = grid_graph(n + 1, n + 1)
    N = n + 1
    dirs = {}
    pins = {}
    for e in g.edges:
        u, v = g.ends[e]
        (r1, c1), (r2, c2) = divmod(u, N), divmod(v, N)
        tail, head = (v, u) if abs(r1 - c1) > abs(r2 - c2) else (u, v)
        dirs[e] = (tail, head)
        if (r1 == r2 and r1 in (0, n)) or (c1 == c2 and c1 in (0, n)):
            pins[e] = (tail, head)
    g = g.with_pins(pins)
    ref = Orientation.from_directed(g, dirs)
    return Instance("grid_pinned", {"n": n}, "orientation", g, 0, None, ref,
                    bias=EdgeBias.uniform(g))


def hexagon(a: int, b: int, c: int) -> Instance:
    _check(min(a, b, c) >= 1, "hexagon needs a, b, c >= 1")
    reg = hexagon_region(a, b, c)
    return _region_instance("hexagon", {"a": a, "b": b, "c": c}, reg)


def aztec(n: int) -> Instance:
    _check(n >= 1, "aztec needs n >= 1")
    return _region_instance("aztec", {"n": n}, aztec_diamond(n))


def _region_instance(name, params, reg: Region) -> Instance:
    g = reg.graph
    emb = embedding(g)
    outer = max(emb.faces, key=lambda f: (f.degree, -f.id))
    d = outer.boundary[0]
    return Instance(name, params, "dfactor", g, None, (d.edge, d.tail),
                    degrees={v: 1 for v in g.vertices}, coloring=dict(reg.coloring), region=reg)


def torus_grid(m: int, n: int) -> Instance:
    _check(m >= 2 and n >= 2 and m % 2 == 0 and n % 2 == 0,
           "torus grid needs even m, n >= 2")
    tg = torus_instance(m, n)
    return Instance("torus_grid", {"m": m, "n": n}, "torus", tg.graph,
                    degrees={v: 1 for v in tg.graph.vertices}, torus=tg)


def kn_outer(n: int) -> Instance:
    _check(3 <= n <= 6, "kn needs 3 <= n <= 6")
    return Instance("kn_outer", {"n": n}, "crossing", kn_graph(n), 0)


def square_with_chord() -> Instance:
    """4-cycle placed clockwise with the chord from 1 to 3 (edge 4)."""
    edges = [(0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 3, 0), (4, 1, 3)]
    rotation = {0: [3, 0], 1: [0, 1, 4], 2: [1, 2], 3: [3, 4, 2]}
    g = MultiGraph(range(4), edges, rotation)
    return Instance("square_with_chord", {}, "tree", g, 0, (0, 0))


_PARAMS = {
    "cycle": ("n", "k"),
    "path": ("n",),
    "grid_pinned": ("n",),
    "hexagon": ("a", "b", "c"),
    "aztec": ("n",),
    "torus_grid": ("m", "n"),
    "kn_outer": ("n",),
    "square_with_chord": (),
}
_BUILDERS = {
    "cycle": cycle,
    "path": path,
    "grid_pinned": grid_pinned,
    "hexagon": hexagon,
    "aztec": aztec,
    "torus_grid": torus_grid,
    "kn_outer": kn_outer,
    "square_with_chord": square_with_chord,
}


def family_params(name: str) -> tuple:
    return _PARAMS[ALIASES.get(name, name)]


def generate(name: str, **params) -> Instance:
    name = ALIASES.get(name, name)
    if name not in _BUILDERS:
        raise BadParams(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    want = _PARAMS[name]
    missing = [p for p in want if params.get(p) is None]
    if missing:
        raise BadParams(f"family {name} needs --{' --'.join(missing)}")
    return _BUILDERS[name](**{p: int(params[p]) for p in want})
