import json

import pytest

from gcn_cohomology.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_axioms_pass(capsys):
    code, out, _ = run(capsys, "axioms", "--N", "2", "--level", "2", "--extended", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["pass"]
    assert {c["tag"] for c in doc["checks"]} >= {"skew-symmetry", "jacobi", "zero-bracket", "central", "module"}


def test_corrupted_axioms_fail(capsys):
    code, out, _ = run(capsys, "axioms", "--level", "2", "--corrupt")
    assert code == 1
    assert "FAIL" in out


def test_cohomology_reports(capsys):
    code, out, _ = run(capsys, "cohomology", "--q", "0..2", "--level", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert [r["dim_H"] for r in doc["reports"]] == [1, 0, 0]


def test_cohomology_threads_agree(capsys, monkeypatch):
    argv = ("cohomology", "--q", "0..2", "--level", "2", "--reduced", "--format", "json")
    _, serial, _ = run(capsys, *argv)
    monkeypatch.setenv("GCN_THREADS", "2")
    _, parallel, _ = run(capsys, *argv)
    assert serial == parallel


def test_verify_builtin(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "psi-prime", "--level", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["cocycle"] and doc["primitive"] == "infeasible"
    assert doc["certificate"]


def test_verify_reports_failing_cocycle(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "gamma-bar", "--level", "3")
    assert code == 1
    assert "FAIL" in out


def test_export_then_verify_coboundary(capsys, tmp_path):
    path = tmp_path / "cob.txt"
    assert main(["export", "--random-coboundary", "2", "--level", "2", "--seed", "3", "--out", str(path)]) == 0
    code, out, _ = run(capsys, "verify", "--file", str(path), "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["primitive"] == "found"


def test_export_reduced_round_trip(capsys, tmp_path):
    path = tmp_path / "psi.txt"
    assert main(["export", "--builtin", "psi-prime", "--N", "2", "--level", "1", "--out", str(path)]) == 0
    assert path.read_text().splitlines()[0] == "2 2 trivial 1 reduced"
    code, _, _ = run(capsys, "verify", "--file", str(path))
    assert code == 0


def test_parse_error_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 1 trivial 2\nJ[0,1,1] J[1,1,1] : l1 +\n")
    code, _, err = run(capsys, "verify", "--file", str(path))
    assert code == 2
    assert "line 2, column 25" in err


def test_properties_deterministic(capsys):
    argv = ("properties", "--level", "1", "--count", "2", "--seed", "9", "--format", "json")
    code, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert code == 0
    assert first == second


@pytest.mark.parametrize("module", ["twisted:2", "natural:1:1/2"])
def test_properties_other_modules(capsys, module):
    code, _, _ = run(capsys, "properties", "--level", "1", "--count", "2", "--module", module)
    assert code == 0


def test_bad_module_spec_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["cohomology", "--module", "free:2"])
    assert info.value.code == 2
