import json
import subprocess
import sys

import pytest

from whk.cli import run
from whk.gallery import by_name, example_datum, g4
from whk.serialize import algebra_from_json, algebra_to_json, datum_to_json, dumps, module_to_json
from whk.smash import build_smash, harvest_modules


@pytest.fixture
def g4_file(tmp_path):
    p = tmp_path / "g4.json"
    assert run(["gallery", "g4", "--out", str(p)]) == 0
    return p


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(dumps(obj) if isinstance(obj, dict) else obj)
    return str(p)


def test_gallery_to_stdout(capsys):
    assert run(["gallery", "g2"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["dim"] == 2 and obj["field"] == {"kind": "rational"}


def test_gallery_file_matches_library(g4_file):
    assert algebra_from_json(json.loads(g4_file.read_text())).same(g4())


def test_check_wha_passes(g4_file, capsys):
    assert run(["check", "wha", "--in", str(g4_file)]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "PASS" in out


@pytest.mark.parametrize("kind", ["algebra", "coalgebra", "wba", "wha"])
def test_check_kinds_from_gallery(kind):
    assert run(["check", kind, "--base", "zn(3)", "--field", "fp:7"]) == 0


def test_mutated_wha_fails_with_witness(tmp_path, capsys):
    obj = algebra_to_json(g4())
    obj["mult"][1][2][0] = "2"  # e12 e21 = 2 e11
    p = write(tmp_path, "bad.json", obj)
    assert run(["check", "wha", "--in", p, "--report", "json"]) == 1
    rep = json.loads(capsys.readouterr().out)["report"]
    failed = [c for c in rep["checks"] if not c["pass"]]
    assert failed and all(c["witness"] for c in failed)


def test_check_datum_and_module(tmp_path):
    d = example_datum(by_name("g3"), "ex1")
    assert run(["check", "datum", "--datum", "ex1", "--base", "g3"]) == 0
    assert run(["check", "datum", "--in", write(tmp_path, "d.json", datum_to_json(d))]) == 0
    M = harvest_modules(d, build_smash(d))[0]
    obj = module_to_json(M)
    assert run(["check", "module", "--in", write(tmp_path, "m.json", obj)]) == 0
    obj["rho"] = [[["0"] * M.dim for _ in range(d.C.dim)] for _ in range(M.dim)]
    assert run(["check", "module", "--in", write(tmp_path, "m0.json", obj)]) == 1


def test_datum_shortcut_file(tmp_path):
    p = write(tmp_path, "d.json", {"example": "ex2", "base": "g4"})
    assert run(["check", "datum", "--datum", p]) == 0


@pytest.mark.parametrize("argv", [
    ["gallery", "g9"],
    ["gallery", "dual:"],
    ["check", "wha", "--base", "nope"],
    ["frobnicate"],
    ["check", "widget"],
    ["check", "wha"],
    ["check", "wha", "--base", "g2", "--field", "fp:6"],
    ["check", "datum", "--datum", "ex7", "--base", "g2"],
    ["check", "datum", "--datum", "ex1"],
    ["integrals", "v0", "--base", "g2"],
    ["check", "wha", "--base", "g4", "--max-dim", "3"],
])
def test_input_errors_exit_2(argv):
    assert run(argv) == 2


def test_malformed_json_exit_2(tmp_path, capsys):
    p = write(tmp_path, "broken.json", '{"dim": 2,\n  "unit": [1, 0]\n')
    assert run(["check", "wha", "--in", p]) == 2
    assert "line 3 column 1" in capsys.readouterr().err


def test_wrong_shape_exit_2(tmp_path, capsys):
    obj = algebra_to_json(g4())
    obj["comult"] = obj["comult"][:3]
    assert run(["check", "wha", "--in", write(tmp_path, "s.json", obj)]) == 2
    assert "comult" in capsys.readouterr().err


def test_missing_input_file_exit_2(tmp_path):
    assert run(["check", "wha", "--in", str(tmp_path / "absent.json")]) == 2


def test_build_smash(tmp_path):
    out = tmp_path / "smash.json"
    assert run(["build", "smash", "--datum", "ex3", "--base", "g3", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["dim"] == 2


@pytest.mark.parametrize("base,dim", [("g2", 4), ("g3", 2), ("g4", 4)])
def test_build_double(base, dim, tmp_path):
    out = tmp_path / "D.json"
    assert run(["build", "double", "--base", base, "--out", str(out)]) == 0
    D = algebra_from_json(json.loads(out.read_text()))
    assert D.dim == dim
    assert run(["check", "wha", "--in", str(out)]) == 0


def test_build_dual_and_tensor(tmp_path, g4_file):
    out = tmp_path / "dual.json"
    assert run(["build", "dual", "--in", str(g4_file), "--out", str(out)]) == 0
    assert algebra_from_json(json.loads(out.read_text())).same(g4().dual())
    out2 = tmp_path / "t.json"
    assert run(["build", "tensor", "--base", "g2", "--base", "g3", "--out", str(out2)]) == 0
    assert json.loads(out2.read_text())["dim"] == 4


def test_build_induce_and_coinduce(capsys):
    assert run(["build", "induce", "--datum", "ex1", "--base", "g3"]) == 0
    assert json.loads(capsys.readouterr().out)["dim"] == 2
    assert run(["build", "coinduce", "--datum", "ex2", "--base", "g3"]) == 0


def test_integrals(capsys):
    assert run(["integrals", "space", "--base", "g2"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["right"]["dim"] == 1 and obj["right"]["basis"] == [["1", "1"]]
    assert run(["integrals", "v4", "--datum", "ex1", "--base", "g4"]) == 0
    assert json.loads(capsys.readouterr().out)["v4"]["dim"] == 1
    assert run(["integrals", "normalized", "--datum", "ex1", "--base", "g2"]) == 0
    assert json.loads(capsys.readouterr().out)["normalized"] is not None
    assert run(["integrals", "v0", "--example", "2", "--base", "g2"]) == 0


def test_suite_subset():
    assert run(["suite", "duality", "--base", "g2", "--base", "g3"]) == 0


def test_json_report_shape(capsys):
    assert run(["check", "wha", "--base", "g3", "--report", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)["report"]
    assert {"id", "anchor", "pass", "witness", "seconds"} <= set(rep["checks"][0])
    assert [c["id"] for c in rep["checks"]] == sorted(c["id"] for c in rep["checks"])


def test_console_entry_point():
    p = subprocess.run([sys.executable, "-m", "whk", "gallery", "g3"], capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["dim"] == 2
    p = subprocess.run([sys.executable, "-m", "whk", "gallery", "g9"], capture_output=True, text=True)
    assert p.returncode == 2 and "error" in p.stderr
