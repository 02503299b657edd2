from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from segalbar.cli import main
from segalbar.finset_model import cyclic_group, load_monoid

ROOT = Path(__file__).resolve().parents[1]
SAMPLES = ROOT / "samples"
GOLDEN = Path(__file__).resolve().parent / "golden"
REGEN = os.environ.get("SEGALBAR_REGEN_GOLDEN") == "1"

# (golden name, argv, expected exit code)
CASES = [
    ("hom_total_2_1", ["hom", "total", "2", "1"], 0),
    ("hom_partial_2_1", ["hom", "partial", "2", "1"], 0),
    ("hom_op_count", ["hom", "op", "3", "2", "--count"], 0),
    ("compose", ["compose", "2→1:[0,0]", "3→2:[0,1,1]"], 0),
    ("compose_partial", ["compose", "2⇀1:[_,0]", "2⇀2:[0,0]"], 0),
    ("tensor", ["tensor", "1→2:[1]", "2→1:[0,0]"], 0),
    ("jmap", ["jmap", "[1]→[0]:[1]"], 0),
    ("hmap", ["hmap", "4→3:[0,1,1,2]"], 0),
    ("hjmap", ["hjmap", "[3]→[1]:[1,2]"], 0),
    ("render_mu", ["render", "2→1:[0,0]"], 0),
    ("render_dot", ["render", "3⇀2:[_,0,1]", "--format", "dot"], 0),
    ("nerve_z2", ["nerve", str(SAMPLES / "z2.json"), "--N", "2"], 0),
    ("segal_nerve_z3", ["segal-check", str(SAMPLES / "nerve_z3.json")], 0),
    ("segal_constant", ["segal-check", str(SAMPLES / "constant2.json"), "--mode", "bijective"], 1),
    ("reconstruct_z3", ["reconstruct", str(SAMPLES / "nerve_z3.json")], 0),
    ("bar_equal", ["bar-equal", str(SAMPLES / "nerve_z3.json"), str(SAMPLES / "z3.json")], 0),
    ("bar_equal_wrong", ["bar-equal", str(SAMPLES / "nerve_z3.json"), str(SAMPLES / "z2.json")], 1),
    ("double_nerve_z2", ["double-nerve", str(SAMPLES / "z2.json"), "--N", "1", "--M", "2"], 0),
    ("double_nerve_left", ["double-nerve", str(SAMPLES / "left_absorbing.json")], 1),
    ("bisegal", ["bisegal-check", str(SAMPLES / "double_nerve_z2.json")], 0),
    ("eckmann_hilton", ["eckmann-hilton", str(SAMPLES / "double_nerve_z2.json")], 0),
    ("verify_small", ["verify", "--max-size", "2"], 0),
]


def run(argv):
    proc = subprocess.run(
        [sys.executable, "-m", "segalbar.cli", *argv],
        capture_output=True,
        cwd=ROOT,
        env=dict(os.environ, PYTHONIOENCODING="utf-8"),
    )
    # sample paths are absolute; keep goldens independent of the checkout location
    return proc.returncode, proc.stdout.replace(str(ROOT).encode(), b"<root>")


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_golden_and_byte_identical(name, argv, code):
    rc1, out1 = run(argv)
    rc2, out2 = run(argv)
    assert rc1 == rc2 == code
    assert out1 == out2
    path = GOLDEN / f"{name}.txt"
    if REGEN:
        GOLDEN.mkdir(exist_ok=True)
        path.write_bytes(out1)
    assert out1 == path.read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["compose", "2→1:[0,0]", "2→1:[0,0]"],
        ["compose", "2→1:[0", "1→1:[0]"],
        ["hmap", "3→3:[1,1,2]"],
        ["jmap", "2→1:[0,0]"],
        ["nerve", "no/such/file.json"],
        ["segal-check", str(SAMPLES / "z2.json")],
        ["verify", "--max-size", "9"],
        ["nerve", str(SAMPLES / "z2.json"), "--N", "6"],
        ["hom", "bogus", "1", "1"],
        [],
    ],
)
def test_malformed_input_exit_2(argv, capsys):
    assert main(argv) == 2


def test_malformed_monoid_file(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"elements": ["e", "a"], "unit": "e", "table": [["e", "a"], ["a", "a"]]}), encoding="utf-8")
    assert main(["nerve", str(p)]) == 0
    p.write_text(json.dumps({"elements": ["e", "a"], "unit": "a", "table": [["e", "a"], ["a", "a"]]}), encoding="utf-8")
    assert main(["nerve", str(p)]) == 2
    assert "unit law fails" in capsys.readouterr().err


def test_invalid_simplicial_set_file(tmp_path, capsys):
    doc = json.loads((SAMPLES / "nerve_z3.json").read_text(encoding="utf-8"))
    doc["faces"]["2,1"][0] = "(2)"
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(doc), encoding="utf-8")
    assert main(["segal-check", str(p)]) == 2
    assert "simplicial" in capsys.readouterr().err


def test_nerve_then_segal_check_for_every_sample(tmp_path, capsys):
    for sample in ("z2", "z3", "trivial", "left_absorbing"):
        out = tmp_path / f"{sample}.sset.json"
        assert main(["nerve", str(SAMPLES / f"{sample}.json"), "--N", "3", "-o", str(out)]) == 0
        assert main(["segal-check", str(out), "--mode", "strict"]) == 0


def test_reconstruct_round_trip(tmp_path, capsys):
    out = tmp_path / "m.json"
    assert main(["reconstruct", str(SAMPLES / "nerve_z3.json"), "-o", str(out)]) == 0
    assert load_monoid(out) == cyclic_group(3)
    assert main(["bar-equal", str(SAMPLES / "nerve_z3.json"), str(out)]) == 0


def test_segal_constant_prints_witness(capsys):
    assert main(["segal-check", str(SAMPLES / "constant2.json")]) == 1
    out = capsys.readouterr().out
    assert "FAIL: witness: n=0" in out


def test_hom_total_2_1_one_arrow(capsys):
    assert main(["hom", "total", "2", "1"]) == 0
    assert capsys.readouterr().out == "2→1:[0,0]\n1 arrow\n"


def test_reconstruct_constant_fails(capsys):
    assert main(["reconstruct", str(SAMPLES / "constant2.json")]) == 1
    assert "fails at level 0" in capsys.readouterr().out
