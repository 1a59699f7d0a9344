import csv
import io
import json
import subprocess
import sys

import pytest

from parabern.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(out):
    rep = json.loads(out)
    rep.pop("timestamp")
    return rep


def test_verify_eigen(capsys):
    code, out, _ = call(capsys, "verify", "eigen", "--domain", "solid-jacobi", "--d", "2", "--gamma", "1/2",
                        "--mu", "1", "--nmax", "6")
    assert code == 0
    rep = report(out)
    assert rep["verdict"] == "PASS" and set(rep) == {"command", "params", "results", "verdict", "version"}
    assert len(rep["results"]) == 84 and all(r["residual_zero"] for r in rep["results"])


def test_verify_bernstein(capsys):
    code, out, _ = call(capsys, "verify", "bernstein", "--theorem", "SolidJ34", "--d", "2", "--gamma", "0",
                        "--mu", "1/2", "--n", "4", "--trials", "50", "--seed", "1")
    assert code == 0
    rows = report(out)["results"]
    assert len(rows) == 50 and all(r["verdict"] != "VIOLATION" for r in rows)


def test_literal_laguerre_exit_one(capsys):
    code, out, err = call(capsys, "verify", "eigen", "--domain", "solid-laguerre", "--d", "1", "--nmax", "2",
                          "--operator-literal")
    assert code == 1
    assert report(out)["verdict"] == "FAIL"
    assert "FAIL" in err and "n=1" in err


@pytest.mark.parametrize("argv", [
    ["verify", "eigen", "--domain", "ball", "--mu", "0.5"],
    ["verify", "eigen", "--domain", "ball", "--mu", "-1"],
    ["verify", "eigen", "--domain", "surface-jacobi", "--d", "1"],
    ["verify", "nothing"],
    ["verify", "bernstein", "--domain", "solid-jacobi"],
    ["verify", "bernstein", "--theorem", "SolidJ34", "--domain", "ball"],
    ["rayleigh", "--theorem", "Nope"],
])
def test_invalid_config_exit_two(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2 and out == "" and "error" in err


def test_determinism_across_workers(monkeypatch, capsys):
    argv = ["verify", "bernstein", "--theorem", "SurfJ45", "--d", "3", "--n", "3", "--trials", "6"]
    monkeypatch.setenv("PARABERN_WORKERS", "1")
    _, a, _ = call(capsys, *argv)
    monkeypatch.setenv("PARABERN_WORKERS", "3")
    _, b, _ = call(capsys, *argv)
    assert report(a) == report(b)


def test_other_commands(capsys, tmp_path):
    cases = [
        ["verify", "orthogonality", "--domain", "surface-laguerre", "--nmax", "3"],
        ["verify", "decomposition", "--domain", "solid-laguerre", "--trials", "5"],
        ["verify", "selfadjoint", "--domain", "ball", "--d", "3", "--trials", "3"],
        ["sharpness", "--theorem", "SurfL48", "--nmax", "4"],
        ["sharpness", "--theorem", "SolidJ_gradOnly", "--n", "3"],
        ["rayleigh", "--theorem", "SolidJ34", "--d", "1", "--n", "2"],
        ["crosscheck", "--domain", "surface-laguerre", "--trials", "20"],
        ["dump-basis", "--domain", "ball", "--nmax", "2"],
    ]
    for argv in cases:
        code, out, err = call(capsys, *argv)
        assert code == 0, (argv, err)
        assert report(out)["verdict"] == "PASS"
    out_file = tmp_path / "r.csv"
    assert run(["dump-basis", "--domain", "solid-jacobi", "--d", "1", "--nmax", "1", "--format", "csv",
                "--output", str(out_file)]) == 0
    rows = list(csv.DictReader(io.StringIO(out_file.read_text())))
    assert len(rows) == 3 and {"id", "element", "norm2"} <= set(rows[0])


def test_literal_ball_constants_fail(capsys):
    code, out, _ = call(capsys, "rayleigh", "--theorem", "Ball22EvenOdd", "--d", "2", "--n", "1",
                        "--literal-constants")
    assert code == 1
    (row,) = report(out)["results"]
    assert row["bound"] == "3" and abs(float(row["value"]) - 2) < 1e-8


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "parabern", "rayleigh", "--theorem", "SurfJ45", "--d", "2",
                           "--gamma", "1/2", "--n", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert abs(float(json.loads(proc.stdout)["results"][0]["value"]) - 13.5) < 1e-8
