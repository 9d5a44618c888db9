import json

import pytest

from circulant_geometry.cli import EXIT_DOMAIN, EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_manifold_check(capsys):
    code, out, err = run(capsys, "manifold", "check", "--A", "2+x1^2", "--B", "1", "--points", "10")
    assert code == EXIT_PASS
    data = json.loads(out)
    assert data["pass"] and data["seed"] == 0
    assert data["command"][:3] == ["circulant-geometry", "manifold", "check"]
    assert "PASS  manifold.F_identity" in err


def test_output_is_deterministic(capsys):
    argv = ("manifold", "curvature", "--A", "3+sin(x1)*x2", "--B", "1+0.1*x3^2", "--points", "5", "--seed", "9")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_point_dump(capsys):
    code, out, _ = run(capsys, "manifold", "curvature", "--A", "2+x1", "--B", "1", "--point", "0,0,0")
    assert code == EXIT_PASS
    dump = json.loads(out)["checks"][-1]["detail"]
    assert dump["theta"] == ["0.75", "1.125", "1.125"]


def test_expression_from_file(capsys, tmp_path):
    path = tmp_path / "a.txt"
    path.write_text("2+x1^2\n")
    code, _, _ = run(capsys, "manifold", "check", "--A", f"@{path}", "--B", "1", "--points", "3")
    assert code == EXIT_PASS


def test_conformal_with_constant_base_runs_corollaries(capsys):
    code, out, err = run(capsys, "conformal", "check", "--A", "2", "--B", "1", "--alpha", "exp(x1)",
                         "--points", "10", "--quiet")
    assert code == EXIT_PASS and err == ""
    data = json.loads(out)
    names = [c["name"] for c in data["checks"]]
    assert "conformal.nonconstant_alpha_witness" in names
    assert [(d["check"], d["entry"]) for d in data["discrepancies"]] == [("conformal.half_formula_printed", "F_bar")]


def test_lie_case(capsys):
    code, out, _ = run(capsys, "lie", "case", "--case", "C", "--l1", "1", "--l2", "1")
    assert code == EXIT_PASS
    summary = json.loads(out)["checks"][-1]
    assert summary["name"] == "case.C.summary"
    assert summary["detail"]["tau"] == "-36/1"


def test_lie_check_fails_without_mu_relations(capsys):
    code, out, _ = run(capsys, "lie", "check", "--constants", "1,0,0,0,0,0,0,0,0")
    assert code == EXIT_FAIL
    checks = {c["name"]: c["pass"] for c in json.loads(out)["checks"]}
    assert checks["lie.jacobi"] and not checks["lie.mu_relations"]


def test_lie_check_valid(capsys):
    code, _, _ = run(capsys, "lie", "check", "--constants", "7/6,1/6,-5/6,-1,0,1,5/6,-1/6,-7/6")
    assert code == EXIT_PASS


def test_lie_scan_small(capsys):
    code, out, _ = run(capsys, "lie", "scan", "--trials", "20")
    assert code == EXIT_PASS
    assert json.loads(out)["seed"] == 1


def test_selftest(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "selftest", "--out", str(path))
    assert code == EXIT_PASS and out == ""
    assert json.loads(path.read_text())["pass"]


@pytest.mark.parametrize("argv", [
    ("manifold", "check", "--A", "2+", "--B", "1"),
    ("manifold", "check", "--A", "2+tan(x1)", "--B", "1"),
    ("manifold", "check", "--A", "2"),
    ("lie", "check", "--constants", "1,2,3"),
    ("lie", "check", "--constants", "1,0.5x"),
    ("lie", "case", "--case", "A", "--l1", "1", "--l2", "1"),
    ("lie", "case", "--case", "B", "--l1", "1", "--l2", "1", "--n2", "2"),
    ("lie", "scan", "--trials", "0"),
    ("manifold", "check", "--A", "2", "--B", "1", "--seed", "-1"),
    ("frobnicate",),
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ("manifold", "curvature", "--A", "1", "--B", "2", "--point", "0,0,0"),
    ("manifold", "check", "--A", "2+log(x1-5)", "--B", "1", "--points", "3"),
    ("conformal", "check", "--A", "2", "--B", "1", "--alpha", "x1-1", "--points", "3"),
])
def test_domain_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_DOMAIN
    assert err.startswith("error:")
