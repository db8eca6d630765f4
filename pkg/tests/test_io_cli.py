import io
import json
import subprocess
import sys

import pytest

from orient_lattice import checks
from orient_lattice.cli import main
from orient_lattice.errors import BadRotation, ParseError, SchemaError
from orient_lattice.families import generate
from orient_lattice.io import dumps, emit_dot, hasse_to_json, instance_from_json, instance_to_json, validate
from orient_lattice.poset import HasseDiagram


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


# schema and round trips

def test_schema_pointer():
    with pytest.raises(SchemaError) as info:
        validate({"vertices": [0, 1], "edges": [{"id": 0}]})
    assert info.value.pointer == "/edges/0"


def test_schema_rejects_unknown_keys():
    with pytest.raises(SchemaError):
        validate({"vertices": [0], "edges": [], "colour": 1})


@pytest.mark.parametrize("name,params", [
    ("cycle", {"n": 4, "k": 2}), ("grid", {"n": 2}), ("aztec", {"n": 2}),
    ("torus", {"m": 2, "n": 2}), ("square_with_chord", {}),
])
def test_instance_round_trip(name, params):
    data = instance_to_json(generate(name, **params))
    again = instance_to_json(instance_from_json(json.loads(dumps(data))))
    assert again == data


def test_foreign_rotation_edge():
    data = {"vertices": [0, 1], "edges": [{"id": 0, "ends": [0, 1]}], "rotation": {"0": [0], "1": [0, 7]}}
    with pytest.raises(BadRotation):
        instance_from_json(data)


def test_bare_graph_gets_reference_from_ends():
    data = {"vertices": [0, 1, 2], "edges": [{"id": 0, "ends": [0, 1]}, {"id": 1, "ends": [2, 1]}]}
    inst = instance_from_json(data)
    assert inst.kind == "orientation"
    assert [(d.tail, d.head) for d in inst.reference] == [(0, 1), (2, 1)]


def test_bad_reference():
    data = instance_to_json(generate("cycle", n=4, k=2))
    data["manifest"]["reference"]["0"] = [0, 2]
    with pytest.raises(ParseError):
        instance_from_json(data)


# DOT

def test_dot_of_a_chain():
    h = HasseDiagram(tuple(range(4)), frozenset({(1, 0), (2, 1), (3, 2)}))
    text = emit_dot(h)
    assert text.startswith("digraph hasse {\n")
    assert text.count("[label=") == 4 and text.count("->") == 3
    assert "n3 -> n2;" in text and 'n3 [label="3", rank=3];' in text


def test_dot_of_two_by_two_box(capsys):
    status, out, _ = run(capsys, "hasse", "--family", "cycle", "--n", "4", "--k", "2", "--format", "dot")
    assert status == 0
    assert out.count("[label=") == 6 and out.count("->") == 6


def test_empty_dot():
    text = emit_dot(HasseDiagram((), frozenset()))
    assert text == "digraph hasse {\n  node [shape=box];\n}\n"


def test_hasse_json_shape():
    h = HasseDiagram(("a", "b"), frozenset({(1, 0)}))
    assert hasse_to_json(h) == {
        "elements": [{"index": 0, "rank": 0}, {"index": 1, "rank": 1}],
        "covers": [{"upper": 1, "lower": 0}],
    }


# command line

def test_gen_then_hasse_through_stdin(capsys, monkeypatch):
    status, gen_out, _ = run(capsys, "gen", "--family", "cycle", "--n", "4", "--k", "2")
    assert status == 0
    status, out, _ = run(capsys, "hasse", stdin=gen_out, monkeypatch=monkeypatch)
    assert status == 0
    assert len(json.loads(out)["elements"]) == 6


def test_output_is_byte_stable(capsys):
    first = run(capsys, "enumerate", "--family", "grid", "--n", "3")[1]
    second = run(capsys, "enumerate", "--family", "grid", "--n", "3")[1]
    assert first == second and json.loads(first)["count"] == 7


def test_verify_passes(capsys):
    status, out, _ = run(capsys, "verify", "--family", "path", "--n", "3")
    assert status == 0
    assert "FAIL" not in out and out.rstrip().endswith("invariants passed")


def test_verify_reports_failure(capsys, monkeypatch):
    def broken(inst):
        return [checks.CheckResult("always false", False, "planted")]

    monkeypatch.setattr(checks, "run_checks", broken)
    status, out, _ = run(capsys, "verify", "--family", "path", "--n", "1")
    assert status == 1
    assert "first counterexample: always false: planted" in out


def test_usage_errors(capsys, tmp_path):
    p = tmp_path / "g.json"
    p.write_text(dumps(instance_to_json(generate("path", n=1))))
    assert run(capsys, "hasse", "--input", str(p), "--family", "path", "--n", "1")[0] == 2
    assert run(capsys, "asm", "--family", "grid", "--n", "2", "--format", "dot")[0] == 2


def test_instance_errors(capsys):
    status, _, err = run(capsys, "hasse", "--family", "torus", "--m", "2", "--n", "2", "--json-errors")
    assert status == 3
    assert json.loads(err)["error"] == "WrongFamily"
    assert run(capsys, "asm", "--family", "cycle", "--n", "4", "--k", "2")[0] == 3
    assert run(capsys, "gen", "--family", "cycle", "--n", "4")[0] == 3


def test_schema_error_has_pointer(capsys, monkeypatch):
    status, _, err = run(capsys, "hasse", "--json-errors", stdin='{"vertices": [0], "edges": [{"id": 0}]}',
                         monkeypatch=monkeypatch)
    assert status == 3
    assert json.loads(err)["pointer"] == "/edges/0"


def test_bad_json(capsys, monkeypatch):
    assert run(capsys, "hasse", stdin="{", monkeypatch=monkeypatch)[0] == 3


def test_asm_subcommand(capsys):
    status, out, _ = run(capsys, "asm", "--family", "grid", "--n", "3")
    data = json.loads(out)
    assert status == 0 and data["count"] == 7
    assert [[0, 1, 0], [1, -1, 1], [0, 1, 0]] in data["matrices"]


def test_heights_subcommand(capsys):
    status, out, _ = run(capsys, "heights", "--family", "path", "--n", "2")
    data = json.loads(out)
    assert status == 0 and data["vstar"] == 2
    assert data["heights"][0]["height"] == {"0": "-1", "1": "-1/2", "2": "0"}


def test_tilings_subcommand(capsys):
    status, out, _ = run(capsys, "tilings", "--family", "aztec", "--n", "2")
    assert status == 0 and json.loads(out)["count"] == 8


def test_phase_subcommand(capsys):
    status, out, _ = run(capsys, "phase", "--family", "torus", "--m", "4", "--n", "4")
    rows = json.loads(out)
    assert status == 0 and len(rows) == 13
    assert {"s": 0, "t": 0, "count": 132, "extremal": False, "components": 1} in rows


def test_trees_subcommand(capsys):
    status, out, _ = run(capsys, "trees", "--family", "square_with_chord")
    data = json.loads(out)
    assert status == 0 and data["count"] == 8
    assert len(data["angle_poset"]["covers"]) == 5
    status, out, _ = run(capsys, "trees", "--family", "square_with_chord", "--format", "dot")
    assert out.startswith("digraph angles {") and out.count("->") == 5


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "orient_lattice", "enumerate", "--family", "path", "--n", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["count"] == 2
