"""JSON and DOT serialization of graphs, instances and Hasse diagrams."""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import jsonschema
import networkx as nx

from .errors import NotGraded, ParseError, SchemaError
from .families import Instance
from .graph import BLACK, WHITE, build_graph, order_key
from .orientations import EdgeBias, Orientation
from .poset import HasseDiagram, graded_rank
from .tilings import region_from_json
from .torus import torus_instance

_ID = {"type": ["integer", "string"]}
_DART = {
    "type": "object",
    "required": ["edge", "tail", "head"],
    "properties": {"edge": _ID, "tail": _ID, "head": _ID},
}

GRAPH_SCHEMA = {
    "type": "object",
    "required": ["vertices", "edges"],
    "properties": {
        "vertices": {"type": "array", "items": _ID, "minItems": 1},
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "ends"],
                "properties": {
                    "id": _ID,
                    "ends": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2},
                },
                "additionalProperties": False,
            },
        },
        "rotation": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": _ID},
        },
        "pinned": {"type": "array", "items": dict(_DART, additionalProperties=False)},
        "identify": {
            "type": "object",
            "required": ["width", "height"],
            "properties": {
                "width": {"type": "integer", "minimum": 2},
                "height": {"type": "integer", "minimum": 2},
            },
            "additionalProperties": False,
        },
        "manifest": {"$ref": "#/$defs/manifest"},
    },
    "additionalProperties": False,
    "$defs": {
        "manifest": {
            "type": "object",
            "properties": {
                "family": {"type": ["string", "null"]},
                "params": {"type": "object", "additionalProperties": {"type": "integer"}},
                "kind": {"enum": ["orientation", "dfactor", "tree", "torus", "crossing"]},
                "vstar": {"type": ["integer", "string", "null"]},
                "fstar": {
                    "oneOf": [
                        {"type": "null"},
                        {
                            "type": "object",
                            "required": ["edge", "tail"],
                            "properties": {"edge": _ID, "tail": _ID},
                            "additionalProperties": False,
                        },
                    ]
                },
                "reference": {
                    "type": "object",
                    "additionalProperties": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2},
                },
                "bias": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["edge", "tail", "head", "weight"],
                        "properties": {
                            "edge": _ID,
                            "tail": _ID,
                            "head": _ID,
                            "weight": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
                        },
                    },
                },
                "degrees": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}},
                "coloring": {"type": "object", "additionalProperties": {"enum": [BLACK, WHITE]}},
                "region": {
                    "type": "object",
                    "required": ["kind", "cells"],
                    "properties": {
                        "kind": {"enum": ["squares", "triangles"]},
                        "cells": {
                            "type": "array",
                            "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
                        },
                    },
                },
            },
            "additionalProperties": False,
        }
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(GRAPH_SCHEMA)


def fraction_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _pointer(path) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in path)


def validate(data) -> None:
    """Raise SchemaError at the JSON pointer of the first violation."""
    errors = sorted(_VALIDATOR.iter_errors(data), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = errors[0]
        raise SchemaError(err.message, _pointer(err.absolute_path))


# --- instances ---------------------------------------------------------------

def _dart_json(d) -> dict:
    return {"edge": d.edge, "tail": d.tail, "head": d.head}


def instance_to_json(inst: Instance) -> dict:
    g = inst.graph
    out = g.to_dict()
    if inst.torus is not None:
        out["identify"] = {"width": inst.torus.cols, "height": inst.torus.rows}
    man = {"family": inst.family, "params": dict(inst.params), "kind": inst.kind}
    man["vstar"] = inst.vstar
    man["fstar"] = None if inst.fstar is None else {"edge": inst.fstar[0], "tail": inst.fstar[1]}
    if inst.reference is not None:
        man["reference"] = inst.reference.to_json()
    if inst.bias is not None:
        man["bias"] = [
            dict(_dart_json(g.canonical(e)), weight=fraction_str(inst.bias.forward[i]))
            for i, e in enumerate(g.edges)
        ]
    if inst.degrees is not None:
        man["degrees"] = {str(v): inst.degrees[v] for v in g.vertices}
    if inst.coloring is not None:
        man["coloring"] = {str(v): inst.coloring[v] for v in g.vertices}
    if inst.region is not None:
        man["region"] = inst.region.to_json()
    out["manifest"] = man
    return out


def _lookup(ids, key, what):
    """Map a JSON key (always a string) back to a vertex or edge id."""
    by_str = {str(x): x for x in ids}
    if key in by_str.values() and not isinstance(key, str):
        return key
    try:
        return by_str[str(key)]
    except KeyError:
        raise ParseError(f"unknown {what} {key!r}") from None


def instance_from_json(data) -> Instance:
    """Validate and rebuild an instance.

    A bare graph becomes an orientation instance whose reference orientation
    directs every edge as its ``ends`` are listed.
    """
    validate(data)
    try:
        g = build_graph(data)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    man = data.get("manifest", {})
    ident = data.get("identify")
    kind = man.get("kind", "torus" if ident else "orientation")
    inst = Instance(man.get("family"), dict(man.get("params", {})), kind, g)

    if "vstar" in man and man["vstar"] is not None:
        inst.vstar = _lookup(g.vertices, man["vstar"], "vertex")
    fs = man.get("fstar")
    if fs is not None:
        e = _lookup(g.edges, fs["edge"], "edge")
        t = _lookup(g.vertices, fs["tail"], "vertex")
        if t not in g.ends[e]:
            raise ParseError(f"f* dart tail {t!r} is not an end of edge {e!r}")
        inst.fstar = (e, t)
    if "reference" in man:
        ref = {}
        for k, (t, h) in man["reference"].items():
            ref[_lookup(g.edges, k, "edge")] = (_lookup(g.vertices, t, "vertex"), _lookup(g.vertices, h, "vertex"))
        try:
            inst.reference = Orientation.from_directed(g, ref)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    elif kind == "orientation":
        bits = [0] * g.n_edges
        for e, d in g.pinned.items():
            bits[g.eindex[e]] = 0 if d.tail == g.ends[e][0] else 1
        inst.reference = Orientation(g, bits)
    if "bias" in man:
        weights = {}
        for item in man["bias"]:
            e = _lookup(g.edges, item["edge"], "edge")
            t, h = _lookup(g.vertices, item["tail"], "vertex"), _lookup(g.vertices, item["head"], "vertex")
            if {t, h} != set(g.ends[e]) or t == h:
                raise ParseError(f"bias dart {t!r}->{h!r} is not a direction of edge {e!r}")
            weights[g.directed(e, t)] = Fraction(item["weight"])
        missing = [e for e in g.edges if all(d.edge != e for d in weights)]
        if missing:
            raise ParseError(f"bias lacks edges {missing[:5]!r}")
        try:
            inst.bias = EdgeBias.from_mapping(g, weights)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    if "degrees" in man:
        inst.degrees = {_lookup(g.vertices, k, "vertex"): d for k, d in man["degrees"].items()}
    if "coloring" in man:
        inst.coloring = {_lookup(g.vertices, k, "vertex"): c for k, c in man["coloring"].items()}
    if "region" in man:
        inst.region = region_from_json(man["region"])
        if inst.region.graph != g:
            raise ParseError("region cells do not match the graph")
    if kind == "torus":
        if ident is None:
            raise ParseError("a torus instance needs an \"identify\" block")
        tg = torus_instance(ident["height"], ident["width"])
        if tg.graph != g:
            raise ParseError("only torus grids built by the generator are supported")
        inst.torus = tg
    return inst


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def parse_graph_file(path: str) -> Instance:
    """Read and validate an instance file; ``-`` reads standard input."""
    return instance_from_json(read_json(path))


# --- Hasse diagrams ---------------------------------------------------------

def _ranks(h: HasseDiagram):
    """Graded rank when there is one, otherwise the length of the longest chain below."""
    if h.rank is not None:
        return list(h.rank)
    try:
        return graded_rank(len(h), h.covers)
    except NotGraded:
        level = [0] * len(h)
        for i in reversed(list(nx.topological_sort(h.digraph()))):
            for up in h.upper_covers(i):
                level[up] = max(level[up], level[i] + 1)
        return level


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def emit_dot(h: HasseDiagram, labels=None, name: str = "hasse") -> str:
    """DOT text: nodes in element order with their rank, cover edges upper -> lower."""
    rank = _ranks(h) if len(h) else []
    lines = [f"digraph {name} {{", "  node [shape=box];"]
    for i in range(len(h)):
        label = str(i) if labels is None else labels[i]
        lines.append(f'  n{i} [label="{_dot_escape(label)}", rank={rank[i]}];')
    for up, lo in sorted(h.covers):
        lines.append(f"  n{up} -> n{lo};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def hasse_to_json(h: HasseDiagram, labels=None) -> dict:
    rank = _ranks(h) if len(h) else []
    return {
        "elements": [
            {"index": i, "rank": rank[i], **({} if labels is None else {"label": labels[i]})}
            for i in range(len(h))
        ],
        "covers": [{"upper": up, "lower": lo} for up, lo in sorted(h.covers)],
    }


def sorted_ids(xs) -> list:
    return sorted(xs, key=order_key)


__all__ = [
    "GRAPH_SCHEMA",
    "dumps",
    "emit_dot",
    "fraction_str",
    "hasse_to_json",
    "instance_from_json",
    "instance_to_json",
    "parse_graph_file",
    "read_json",
    "sorted_ids",
    "validate",
]
