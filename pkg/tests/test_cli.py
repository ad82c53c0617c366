import json

import pytest

from sklab.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None), out


def test_verify_hecke_passes(capsys):
    code, rep, _ = _run(capsys, "verify", "hecke", "--seed", "7")
    assert code == 0 and rep["outcome"] == "pass"
    assert rep["inputs"]["seed"] == 7


def test_verify_mp_passes(capsys):
    code, rep, _ = _run(capsys, "verify", "mp", "--points", "20")
    assert code == 0 and rep["outcome"] == "pass"


def test_reports_are_byte_stable(capsys):
    _, _, a = _run(capsys, "verify", "hecke", "--no-timing")
    _, _, b = _run(capsys, "verify", "hecke", "--no-timing")
    assert a == b


def test_count_examples(capsys):
    code, rep, _ = _run(capsys, "count", "--tau", "0,1", "--m", "1", "--N", "1", "--delta", "2.0001")
    assert code == 0 and rep["details"]["count"] == 2
    code, rep, _ = _run(capsys, "count", "--tau", "0.1,0.7", "--m", "3", "--N", "2", "--delta", "1.5")
    assert code == 0 and rep["details"]["count"] == 0


def test_count_budget_fails(capsys):
    code, rep, _ = _run(capsys, "count", "--tau", "0,0.05", "--m", "6", "--N", "1", "--delta", "16", "--budget", "100")
    assert code == 1 and rep["outcome"] == "fail"


def test_construct_and_check_maass(tmp_path, capsys):
    table = tmp_path / "table.json"
    code, rep, _ = _run(capsys, "construct", "sk", "--k", "10", "--dmax", "40", "--table", str(table))
    assert code == 0 and rep["details"]["maass"]["first_violation"] is None
    code, rep, _ = _run(capsys, "check", "maass", "--input", str(table))
    assert code == 0

    data = json.loads(table.read_text())
    entry = next(e for e in data["entries"] if e["n"] > 1 and e["m"] > 1)
    entry["num"] = str(int(entry["num"]) + 1)
    table.write_text(json.dumps(data))
    code, rep, _ = _run(capsys, "check", "maass", "--input", str(table))
    assert code == 1 and rep["details"]["first_violation"] is not None


def test_report_file_output(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["check", "characterization", "--p", "2", "--k", "10", "--output", str(out)])
    assert code == 0
    assert json.loads(out.read_text())["outcome"] == "pass"


def test_scan_poincare(tmp_path, capsys):
    grid = tmp_path / "g.json"
    grid.write_text(json.dumps({"N_range": [1, 16], "k": 12, "n": 1}))
    code, rep, _ = _run(capsys, "scan", "poincare", "--grid", str(grid))
    assert code == 0 and rep["outcome"] == "pass"


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["check", "maass"],
        ["check", "maass", "--input", "/nonexistent/table.json"],
        ["check", "characterization", "--p", "2"],
        ["construct", "sk", "--k", "14"],
        ["count", "--tau", "0,-1", "--m", "1", "--N", "1", "--delta", "2"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == 2
