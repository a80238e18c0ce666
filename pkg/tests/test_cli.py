import json
import subprocess
import sys

import pytest

from procstar.cli import FALSE, OK, UNKNOWN, USAGE, main
from procstar.corpus import write_fixtures


@pytest.fixture(scope="module")
def data(tmp_path_factory):
    d = tmp_path_factory.mktemp("data")
    write_fixtures(d)
    return d


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_present_text(data, capsys):
    code, out, _ = run(capsys, "present", data / "delta1.sset.json", "--text")
    assert code == OK
    lines = out.splitlines()
    assert "x1x2 = 0" in lines and "bx2 = x2" in lines and "x2*b = x2*" in lines
    assert "a + b + c + d + e = 1" in lines


def test_present_json_matches_fixture(data, capsys):
    code, out, _ = run(capsys, "present", data / "delta1.sset.json")
    assert code == OK
    assert out == (data / "delta1.presentation.json").read_text()


def test_check_proper(data, capsys):
    code, out, _ = run(capsys, "check-proper", data / "infinite_points_to_point.filtration.json",
                       "--format", "text")
    assert code == FALSE
    assert "NOT_PROPER" in out and "witness: 0" in out
    code, out, _ = run(capsys, "check-proper", data / "fold.smap.json")
    assert code == OK and json.loads(out)["max_preimage"] == 2


def test_rep_canonical_check(data, capsys):
    code, out, _ = run(capsys, "rep", data / "delta1.presentation.json", "--canonical", "--check")
    doc = json.loads(out)
    assert code == OK
    assert doc["max_residual"] <= 1e-12 and doc["vertex_checks_ok"]


def test_rep_search_and_check_file(data, tmp_path, capsys):
    P0 = tmp_path / "p0.json"
    assert run(capsys, "present", data / "delta0.sset.json", "-o", P0)[0] == OK
    rep = tmp_path / "rep.json"
    code, out, _ = run(capsys, "rep", P0, "--search", "1", "2000", "-o", rep)
    assert code == OK and json.loads(out)["search"]["converged"]
    code, out, _ = run(capsys, "rep", P0, "--check", rep, "--tol", "1e-6")
    assert code == OK
    code, out, _ = run(capsys, "rep", data / "delta1.presentation.json", "--search", "2", "20", "--check")
    assert code == FALSE


def test_nf(data, capsys):
    pres = data / "delta1.presentation.json"
    code, out, _ = run(capsys, "nf", pres, "--expr", "x1x1*x1", "--format", "text")
    assert code == OK and out.strip() == "x1"
    assert run(capsys, "nf", pres, "--expr", "a+b+c+d+e", "--equal", "1")[0] == OK
    assert run(capsys, "nf", pres, "--expr", "a", "--equal", "b")[0] == FALSE
    assert run(capsys, "nf", pres, "--expr", "a", "--equal", "b", "--bound", "2")[0] == UNKNOWN
    assert run(capsys, "nf", pres, "--expr", "a + q")[0] == USAGE


def test_induce_and_verify(data, tmp_path, capsys):
    out_path = tmp_path / "fold.genmap.json"
    assert run(capsys, "induce", data / "fold.smap.json", "-o", out_path)[0] == OK
    assert out_path.read_text() == (data / "fold.genmap.json").read_text()
    assert run(capsys, "verify", out_path)[0] == OK
    code, out, _ = run(capsys, "verify", data / "vertex0_delta1.genmap.json", "--format", "text")
    assert code == FALSE and "FAIL: x1x1* = a" in out


def test_check_homotopy(data, capsys):
    f, gamma = data / "id_delta1.smap.json", data / "id_delta1_pr2.smap.json"
    code, out, _ = run(capsys, "check-homotopy", f, f, gamma, "--proper", "--eta")
    doc = json.loads(out)
    assert code == OK and doc["valid"] and doc["eta"]["status"] == "PASS"
    code, _, _ = run(capsys, "check-homotopy", f, f, data / "collapse_delta1.smap.json")
    assert code == USAGE


def test_subdivide_provenance_and_idempotence(data, tmp_path, capsys):
    a, b, prov = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "prov.json"
    assert run(capsys, "subdivide", data / "circle.sset.json", "-o", a, "--provenance", prov)[0] == OK
    doc = json.loads(prov.read_text())
    assert doc["schema"] == "provenance.v1"
    assert len(doc["classes"]["v[0]"]["members"]) == 3
    assert run(capsys, "subdivide", data / "circle.sset.json", "-o", b)[0] == OK
    assert a.read_bytes() == b.read_bytes()
    p1, p2 = tmp_path / "p1.json", tmp_path / "p2.json"
    run(capsys, "present", a, "-o", p1)
    run(capsys, "present", a, "-o", p2)
    assert p1.read_bytes() == p2.read_bytes()
    code, out, _ = run(capsys, "subdivide", data / "delta2.sset.json", "--format", "text")
    assert code == OK and "[7, 12, 6]" in out


def test_usage_errors(data, tmp_path, capsys):
    assert run(capsys)[0] == USAGE
    assert run(capsys, "present", tmp_path / "missing.json")[0] == USAGE
    assert run(capsys, "present", data / "fold.smap.json")[0] == USAGE
    assert run(capsys, "rep", data / "delta1.presentation.json")[0] == USAGE
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema": "sset.v1"}))
    code, _, err = run(capsys, "subdivide", bad)
    assert code == USAGE and err


def test_module_entry_point(data):
    proc = subprocess.run([sys.executable, "-m", "procstar", "check-proper",
                           str(data / "infinite_points_to_point.filtration.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["witness"] == "0"
