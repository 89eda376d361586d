import json
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")

from poisweyl.cli import main

REPO_ROOT = Path(__file__).resolve().parent.parent
SCHEMA = json.loads((REPO_ROOT / "report.schema.json").read_text())
FIXTURES = REPO_ROOT / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    return code, payload


def test_bracket_golden(capsys):
    code, out, _ = run(capsys, "bracket", "--space", "q1,p1", "p1*q1", "q1^2")
    assert code == 0
    assert "value=2*q1^2" in out


def test_bracket_abstract_space(capsys):
    code, out, _ = run(
        capsys,
        "bracket",
        "--abstract", "x,y",
        "--bracket", "x,y=2*y",
        "x", "y",
    )
    assert code == 0
    assert "value=2*y" in out


def test_wprod_normal_orders(capsys):
    code, out, _ = run(capsys, "wprod", "w1*z1", "1")
    assert code == 0
    assert "value=z1*w1 - i*h" in out


def test_wcomm_differential(capsys):
    code, out, _ = run(capsys, "wcomm", "--diff", "d", "u")
    assert code == 0
    assert "value=1" in out


def test_symmetrize_command(capsys):
    code, out, _ = run(capsys, "symmetrize", "z1*w1")
    assert code == 0
    assert "value=z1*w1 - 1/2*i*h" in out


def test_quantize_weyl_command(capsys):
    code, out, _ = run(capsys, "quantize-weyl", "--space", "q1,p1", "q1*p1")
    assert code == 0
    assert "value=z1*w1 - 1/2*i*h" in out


def test_check_q1_pass_and_fail(capsys):
    code, _, _ = run(capsys, "check-q1", "--map", "weyl", "q1^2", "p1^2")
    assert code == 0
    code, out, _ = run(capsys, "check-q1", "--map", "weyl", "q1^3", "p1^3")
    assert code == 1
    assert "FAIL" in out


def test_scan_q1_json(capsys):
    code, payload = run_json(
        capsys, "scan-q1", "--map", "affine-plus", "--degree", "6"
    )
    assert code == 0
    assert payload["pass"] is True
    assert payload["parameters"]["pairs-checked"] == 378
    assert payload["results"] == []


def test_scan_q1_weyl_failures(capsys):
    code, payload = run_json(capsys, "scan-q1", "--map", "weyl", "--degree", "3")
    assert code == 1
    assert payload["pass"] is False
    assert payload["parameters"]["failures"] == 2
    assert all(entry["pass"] is False for entry in payload["results"])


def test_scan_q1_jobs_output_identical(capsys):
    _, out1, _ = run(
        capsys, "scan-q1", "--map", "weyl", "--degree", "3", "--jobs", "1"
    )
    _, out2, _ = run(
        capsys, "scan-q1", "--map", "weyl", "--degree", "3", "--jobs", "2"
    )
    assert out1 == out2


def test_groenewold_command(capsys):
    code, payload = run_json(capsys, "groenewold")
    assert code == 0
    assert payload["pass"] is True
    cases = {entry["case"]: entry for entry in payload["results"]}
    assert cases["obstruction discrepancy"]["hbar2-coefficient"] == "1/3"


def test_lie_analyze_fixture(capsys):
    code, out, _ = run(
        capsys,
        "lie", "analyze",
        "--space", "q1,q2,p1,p2",
        "--fixture", str(FIXTURES / "example5.txt"),
    )
    assert code == 0
    assert "nilpotent: true" in out
    assert "class: 3" in out
    assert "derived-dim: 2" in out
    assert "ascending-dims: 1,3,5" in out


def test_lie_close_cap(capsys):
    fixture = FIXTURES / "a1.txt"
    code, out, _ = run(
        capsys, "lie", "close", "--space", "q1,p1", "--fixture", str(fixture)
    )
    assert code == 0
    assert "dimension: 2" in out


def test_lie_nildeg(capsys):
    code, out, _ = run(
        capsys,
        "lie", "nildeg",
        "--space", "q1,q2,p1,p2",
        "--fixture", str(FIXTURES / "example5.txt"),
        "p1",
    )
    assert code == 0
    assert "value=2" in out


def test_lie_invariants(capsys):
    code, payload = run_json(
        capsys,
        "lie", "invariants",
        "--space", "q1,q2,p1,p2",
        "--fixture", str(FIXTURES / "h4.txt"),
    )
    assert code == 0
    assert payload["results"][0]["derived-subalgebra-dim"] == 1


def test_lie_form_check(capsys):
    code, _, _ = run(
        capsys,
        "lie", "form-check", "--space", "q1,q2,p1,p2",
        "p1 + q1*p2 + q1*q2",
    )
    assert code == 0
    code, out, _ = run(
        capsys, "lie", "form-check", "--space", "q1,q2,p1,p2", "q2*p1"
    )
    assert code == 1


def test_lie_witness(capsys, tmp_path):
    code, _, _ = run(
        capsys,
        "lie", "witness",
        "--space", "q1,q2,p1,p2",
        "--fixture", str(FIXTURES / "example5.txt"),
        "--witness", str(FIXTURES / "example5_witness.txt"),
    )
    assert code == 0
    bad = tmp_path / "bad_witness.txt"
    bad.write_text("q2 = b4\n")
    code, _, _ = run(
        capsys,
        "lie", "witness",
        "--space", "q1,q2,p1,p2",
        "--fixture", str(FIXTURES / "example5.txt"),
        "--witness", str(bad),
    )
    assert code == 1


def test_affine_quantize(capsys):
    code, out, _ = run(capsys, "affine", "quantize", "x")
    assert code == 0
    assert "value=-i*h*u*d" in out
    code, out, _ = run(capsys, "affine", "quantize", "x*y")
    assert "value=0" in out
    code, out, _ = run(
        capsys, "affine", "quantize", "--variant", "remark3", "x^3"
    )
    assert "value=-3*i*h*u*d" in out


def test_affine_audit(capsys):
    for variant in ("plus", "minus", "remark3"):
        code, payload = run_json(
            capsys, "affine", "audit", "--variant", variant, "--degree", "6"
        )
        assert code == 0
        assert payload["pass"] is True


def test_affine_group(capsys):
    code, out, _ = run(capsys, "affine", "group", "1,2", "1,1")
    assert code == 0
    assert "value=(5,2)" in out


def test_affine_rep_check(capsys):
    code, payload = run_json(
        capsys, "affine", "rep-check", "--cases", "25", "--seed", "7"
    )
    assert code == 0
    assert payload["parameters"]["checked"] == 50
    assert payload["parameters"]["failures"] == 0


def test_usage_errors(capsys):
    code, _, err = run(capsys, "no-such-command")
    assert code == 2
    code, _, err = run(capsys, "bracket", "--space", "a,b", "a", "b")
    assert code == 2
    code, _, err = run(capsys, "bracket", "--space", "q1,p1", "q1 + + p1", "q1")
    assert code == 2
    assert "position" in err


def test_hbar_rejected_in_lie_fixture(capsys, tmp_path):
    fixture = tmp_path / "bad.txt"
    fixture.write_text("h*q1\n")
    code, _, err = run(
        capsys, "lie", "close", "--space", "q1,p1", "--fixture", str(fixture)
    )
    assert code == 2
    assert "h-free" in err


def test_outputs_deterministic(capsys):
    args = ("scan-q1", "--map", "remark3", "--degree", "4", "--format", "json")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_json_schema_on_assorted_commands(capsys):
    commands = [
        ("bracket", "--space", "q1,p1", "q1", "p1"),
        ("wcomm", "z1", "w1"),
        ("groenewold",),
        ("affine", "group", "1,2", "3,4"),
        (
            "lie", "analyze", "--space", "q1,p1",
            "--fixture", str(FIXTURES / "h2.txt"),
        ),
    ]
    for argv in commands:
        _, payload = run_json(capsys, *argv)
        assert isinstance(payload["pass"], bool)
