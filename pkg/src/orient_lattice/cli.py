"""Command-line interface: ``orient-lattice <subcommand> [options]``.

Exit status is 0 on success, 1 when ``verify`` finds a failing invariant,
2 on usage errors and 3 on instance errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import checks
from .errors import LatticeError, NotOuterHamiltonian, WrongFamily
from .families import FAMILIES, ALIASES, generate
from .graph import order_key
from .io import dumps, emit_dot, fraction_str, hasse_to_json, instance_to_json, parse_graph_file
from .tilings import asm_of_orientation, domino_height
from .torus import is_extremal
from .trees import outer_cycle

EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INSTANCE = 3

DOT_COMMANDS = {"hasse", "trees"}


class UsageError(Exception):
    pass


def _edges(s) -> list:
    return sorted(s, key=order_key)


def _require(inst, *kinds):
    if inst.kind not in kinds:
        raise WrongFamily(f"{inst.kind} instances are not supported here; need {' or '.join(kinds)}")


def _hasse_of(inst):
    if inst.kind == "torus":
        raise WrongFamily("torus instances have no lattice; the lattice theorems need the sphere")
    return checks.build(inst).hasse_diagram()


# --- subcommands ------------------------------------------------------------------

def cmd_gen(inst, args):
    return dumps(instance_to_json(inst))


def cmd_enumerate(inst, args):
    obj = checks.build(inst)
    if inst.kind == "orientation":
        items = [{"index": i, "orientation": r.to_json()} for i, r in enumerate(obj.elements)]
    elif inst.kind in ("dfactor", "torus"):
        items = [{"index": i, "edges": _edges(m)} for i, m in enumerate(obj.factors)]
    else:
        items = [{"index": i, "edges": _edges(t)} for i, t in enumerate(obj.elements)]
    return dumps({"kind": inst.kind, "count": len(items), "elements": items})


def cmd_hasse(inst, args):
    h = _hasse_of(inst)
    if args.format == "dot":
        return emit_dot(h)
    return dumps(hasse_to_json(h))


def cmd_heights(inst, args):
    _require(inst, "orientation", "dfactor")
    obj = checks.build(inst)
    out = []
    if inst.kind == "orientation":
        for i, r in enumerate(obj.elements):
            out.append({"index": i, "height": obj.height(r).to_json()})
        return dumps({"vstar": obj.vstar, "heights": out})
    for i, m in enumerate(obj.factors):
        item = {"index": i, "edges": _edges(m), "face_height": {str(f): h for f, h in obj.face_height(m).items()}}
        if inst.region is not None and inst.region.kind == "squares":
            dh = domino_height(inst.region, m)
            item["domino_height"] = [[x, y, fraction_str(v)] for (x, y), v in dh.items()]
        out.append(item)
    return dumps({"fstar": obj.fstar, "heights": out})


def cmd_asm(inst, args):
    if inst.family != "grid_pinned":
        raise WrongFamily("asm needs a pinned grid instance (--family grid)")
    L = checks.build(inst)
    n = inst.params["n"]
    mats = [[list(row) for row in asm_of_orientation(L, r, n)] for r in L.elements]
    return dumps({"n": n, "count": len(mats), "matrices": mats})


def cmd_tilings(inst, args):
    _require(inst, "dfactor", "torus")
    obj = checks.build(inst)
    out = {"count": len(obj.factors), "tilings": [_edges(m) for m in obj.factors]}
    if inst.region is not None:
        out["region"] = inst.region.to_json()
    return dumps(out)


def cmd_phase(inst, args):
    _require(inst, "torus")
    td = checks.build(inst)
    diagram = td.phase_diagram()
    comps = {}
    for comp in td.twist_components():
        h = td.cohomology_of(comp[0])
        comps[h] = comps.get(h, 0) + 1
    rows = [
        {"s": s, "t": t, "count": diagram[(s, t)], "extremal": is_extremal((s, t), diagram),
         "components": comps[(s, t)]}
        for s, t in sorted(diagram)
    ]
    return dumps(rows)


def cmd_trees(inst, args):
    _require(inst, "tree", "crossing")
    obj = checks.build(inst)
    poset = None
    if inst.kind == "tree":
        try:
            outer_cycle(obj.trees)
            poset = obj.angle_poset()
        except NotOuterHamiltonian:
            poset = None
    if args.format == "dot":
        if poset is None:
            raise NotOuterHamiltonian("the angle poset needs a graph whose special face is an outer cycle")
        return emit_dot(poset, [f"{v},{e}" for v, e in poset.elements], name="angles")
    out = {"count": len(obj.elements), "trees": [_edges(t) for t in obj.elements]}
    if poset is not None:
        out["angle_poset"] = {
            "angles": [list(a) for a in poset.elements],
            "covers": [{"upper": list(poset.elements[u]), "lower": list(poset.elements[lo])}
                       for u, lo in sorted(poset.covers)],
        }
    return dumps(out)


def cmd_verify(inst, args):
    results = checks.run_checks(inst)
    lines = [f"{'PASS' if r.ok else 'FAIL'}  {r.name}" for r in results]
    failed = [r for r in results if not r.ok]
    if failed:
        lines.append(f"first counterexample: {failed[0].name}: {failed[0].detail}")
    else:
        lines.append(f"all {len(results)} invariants passed")
    return "\n".join(lines) + "\n", (EXIT_FAILED if failed else 0)


COMMANDS = {
    "gen": (cmd_gen, "generate an instance as graph JSON with its manifest"),
    "enumerate": (cmd_enumerate, "list every lattice element"),
    "hasse": (cmd_hasse, "Hasse diagram of the lattice"),
    "heights": (cmd_heights, "height functions of every element"),
    "asm": (cmd_asm, "alternating sign matrices of a pinned grid"),
    "tilings": (cmd_tilings, "tilings (d-factors) of a region or torus"),
    "phase": (cmd_phase, "torus phase diagram with extremality and twist components"),
    "trees": (cmd_trees, "spanning trees and the angle poset"),
    "verify": (cmd_verify, "run every invariant check on the instance"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orient-lattice", description="Distributive lattices of graph orientations.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", metavar="PATH", help="instance JSON file, or - for standard input")
        p.add_argument("--family", help=f"generate a named family: {', '.join(FAMILIES)} "
                                        f"(aliases: {', '.join(sorted(ALIASES))})")
        for flag in ("n", "k", "a", "b", "c", "m"):
            p.add_argument(f"--{flag}", type=int)
        p.add_argument("--format", choices=("json", "dot"), default="json")
        p.add_argument("--json-errors", action="store_true", help="report errors as JSON on stderr")
    return parser


def _load(args):
    if args.input is not None and args.family is not None:
        raise UsageError("give either --input or --family, not both")
    if args.format == "dot" and args.command not in DOT_COMMANDS:
        raise UsageError(f"{args.command} does not support --format dot")
    if args.family is not None:
        params = {k: getattr(args, k) for k in ("n", "k", "a", "b", "c", "m")}
        return generate(args.family, **params)
    return parse_graph_file(args.input if args.input is not None else "-")


def _error(args, status, exc) -> int:
    if getattr(args, "json_errors", False):
        err = {"error": type(exc).__name__, "message": str(exc), "status": status}
        pointer = getattr(exc, "pointer", None)
        if pointer is not None:
            err["pointer"] = pointer
        sys.stderr.write(json.dumps(err) + "\n")
    else:
        sys.stderr.write(f"orient-lattice: error: {exc}\n")
    return status


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        inst = _load(args)
        fn = COMMANDS[args.command][0]
        result = fn(inst, args)
    except UsageError as exc:
        return _error(args, EXIT_USAGE, exc)
    except LatticeError as exc:
        return _error(args, EXIT_INSTANCE, exc)
    status = 0
    if isinstance(result, tuple):
        result, status = result
    sys.stdout.write(result)
    return status


if __name__ == "__main__":
    sys.exit(main())
