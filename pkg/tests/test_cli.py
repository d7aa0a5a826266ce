import io
import json
import subprocess
import sys

import pytest

from gcontact.cli import main


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run("--format", "json", *argv)
    return code, json.loads(text)


@pytest.mark.parametrize("name", [
    "cosymplectic.json", "contact_heisenberg.json", "nilmanifold_circle.json",
    "type_jump_r5.json", "cokahler_flat.json", "calabi_yau_torus.json",
])
def test_validate_corpus(data_dir, name):
    code, rep = run_json("validate", data_dir / name)
    assert code == 0
    assert all(c["status"] in ("PASS", "SKIP") for c in rep["checks"])


def test_report_schema_and_order(data_dir):
    _, rep = run_json("validate", data_dir / "cosymplectic.json")
    names = [c["name"] for c in rep["checks"]]
    assert names == sorted(names)
    assert set(rep["checks"][0]) == {"name", "status", "residual", "notes"}


def test_byte_identical_reports(data_dir):
    args = ("axioms", data_dir / "contact_heisenberg.json", "--twists", "contact", "--trials", "5", "--seed", "3")
    assert run("--format", "json", *args) == run("--format", "json", *args)


def test_parse_nil():
    code, rep = run_json("parse-nil", "(0,0,12,13,14+23,34+52)")
    assert code == 0
    assert rep["result"]["nil"] == "(0,0,12,13,14+23,-25+34)"
    assert rep["result"]["dim"] == 6


def test_axioms_variants(data_dir):
    doc = data_dir / "contact_heisenberg.json"
    assert run("axioms", doc, "--twists", "contact", "--trials", "5")[0] == 0
    assert run("axioms", doc, "--twists", "contact", "--trials", "5", "--variant", "flipped")[0] == 1
    assert run("axioms", doc, "--bracket", "standard", "--trials", "5")[0] == 0


def test_involutivity_and_degree_cap(data_dir, monkeypatch, capsys):
    doc = data_dir / "contact_heisenberg.json"
    code, rep = run_json("involutivity", doc, "--pair", "contact", "--twists", "contact")
    assert code == 0 and rep["result"]["V"]["f"] == []
    assert run("involutivity", doc, "--pair", "contact", "--twists", "zero")[0] == 1
    monkeypatch.setenv("GC_MAX_DEGREE", "1")
    assert run("involutivity", doc, "--pair", "contact", "--degree-bound", "2")[0] == 2
    assert "GC_MAX_DEGREE=1" in capsys.readouterr().err


def test_transform_targets(data_dir):
    doc = data_dir / "cosymplectic.json"
    for target in ("cosymplectic", "sample", "zero"):
        code, rep = run_json("transform", doc, "--by", "bba", "--target", target)
        assert code == 0 and "result" in rep
    assert run("transform", doc, "--by", "bba", "--target", "cosymplectic", "--variant", "flipped")[0] == 1


def test_structure_commands(data_dir):
    ck = data_dir / "cokahler_flat.json"
    assert run("cokahler", ck, "--j1", "J1", "--j2", "J2", "--metric", "flat")[0] == 0
    assert run("cokahler", ck, "--j1", "J1_deformed", "--j2", "J2_deformed", "--metric", "flat_deformed")[0] == 0
    assert run("cokahler", ck, "--j1", "J1_dual", "--j2", "J2_dual", "--metric", "flat_dual")[0] == 0
    assert run("cokahler", ck, "--j1", "J1", "--j2", "J1", "--metric", "flat")[0] == 1
    code, rep = run_json("einstein", data_dir / "calabi_yau_torus.json", "--p1", "exp_i_omega", "--p2", "Omega")
    assert code == 0 and rep["result"]["c"] == "1/1"
    assert run("tdualize", data_dir / "cosymplectic.json", "--pair", "cosymplectic")[0] == 0
    heis = data_dir / "contact_heisenberg.json"
    assert run("cech", heis, "--data", "two_patch", "--expected", "contact")[0] == 0
    assert run("cech", heis, "--data", "three_patch_bad", "--expected", "contact")[0] == 1


@pytest.mark.parametrize("check", ["bracket", "differential", "sekiya"])
def test_oracle(check):
    assert run("oracle", "--check", check, "--trials", "3")[0] == 0


def test_input_errors(data_dir, tmp_path, capsys):
    assert run("validate", tmp_path / "missing.json")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"frame": {"dim": 3}, "forms": {"x": "e9"}}')
    assert run("einstein", bad, "--p1", "x", "--p2", "x")[0] == 2
    assert run("cokahler", data_dir / "cokahler_flat.json", "--j1", "nope", "--j2", "J2", "--metric", "flat")[0] == 2
    assert "quadruples.nope" in capsys.readouterr().err
    assert run("parse-nil", "(0,0,1")[0] == 2


def test_console_script_entry_point(data_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "gcontact.cli", "validate", str(data_dir / "contact_heisenberg.json")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip().endswith("0 failed")
