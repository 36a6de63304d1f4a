import json
import subprocess
import sys
from pathlib import Path

import pytest

from nashapprox.cli import EXIT_INPUT, EXIT_OK, EXIT_PIPELINE, EXIT_VERIFY, main
from nashapprox.problemio import ProblemError, load_problem, parse_problem
from nashapprox.problems import uv_problem
from nashapprox.selftest import SUITES, run_selftest

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def write(tmp_path, doc, name="p.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def test_run_writes_report(tmp_path):
    out = tmp_path / "out.json"
    assert main(["run", "--problem", str(PROBLEMS / "uv.json"), "--nu", "1,2,3", "--out", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["report"]["passed"]
    assert set(doc["result"]["approximations"]) == {"1", "2", "3"}
    assert "timings" not in doc["result"]["diagnostics"]


def test_rerun_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["run", "--problem", str(PROBLEMS / "circle.json"), "--nu", "1,2", "--seed", "5"]
    assert main(args + ["--out", str(a)]) == EXIT_OK
    assert main(args + ["--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_verbose_adds_timings(tmp_path, capsys):
    out = tmp_path / "out.json"
    assert main(["run", "--problem", str(PROBLEMS / "trivial.json"), "--nu", "1,2", "--out", str(out), "--verbose"]) == EXIT_OK
    assert "timings" in json.loads(out.read_text())["result"]["diagnostics"]
    assert "PASS" in capsys.readouterr().err


@pytest.mark.parametrize(
    "args",
    [
        ["--nu", ""],
        ["--nu", "3,2"],
        ["--nu", "a"],
        ["--precision", "16"],
        ["--tol", "0"],
        ["--order", "1"],
        ["--order", "99"],
        ["--mode", "variety"],
        ["--nu", "0,1"],
    ],
)
def test_bad_flags_are_input_errors(args):
    assert main(["run", "--problem", str(PROBLEMS / "uv.json")] + args) == EXIT_INPUT


def test_bad_files_are_input_errors(tmp_path):
    assert main(["run", "--problem", write(tmp_path, "{not json")]) == EXIT_INPUT
    assert main(["run", "--problem", str(tmp_path / "missing.json")]) == EXIT_INPUT
    doc = uv_problem(4)
    doc["Q"] = ["u*w - 1"]
    assert main(["run", "--problem", write(tmp_path, doc)]) == EXIT_INPUT


def test_argparse_errors_map_to_input():
    assert main(["run"]) == EXIT_INPUT
    assert main(["frobnicate"]) == EXIT_INPUT


def test_pipeline_error_exit(tmp_path):
    doc = uv_problem(6)
    doc["declared_dim"] = 1
    assert main(["run", "--problem", write(tmp_path, doc), "--nu", "1,2"]) == EXIT_PIPELINE


def test_selftest(capsys):
    assert main(["selftest"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines and all(l.startswith("PASS") for l in lines)
    assert main(["selftest", "--filter", "exact-poly"]) == EXIT_OK
    assert main(["selftest", "--inject-fault"]) == EXIT_VERIFY


def test_selftest_api():
    results = run_selftest()
    assert {r.suite for r in results} == set(SUITES)
    faulty = run_selftest(fault=True)
    assert sum(not r.ok for r in faulty) >= 2
    with pytest.raises(KeyError):
        run_selftest("nope")


def test_describe(capsys):
    assert main(["describe"]) == EXIT_OK
    assert "exit_codes" in json.loads(capsys.readouterr().out)
    assert main(["describe", "--problem", str(PROBLEMS / "sqrt.json")]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["mode"] == "variety"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nashapprox", "selftest", "--filter", "elimination"], capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout


def test_problem_parsing():
    spec = load_problem(PROBLEMS / "uv.json")
    assert spec.mode == "theorem" and spec.y_vars == ["u", "v"] and spec.order == 8
    as_list = uv_problem(4)
    as_list["jet"] = [as_list["jet"]["u"], as_list["jet"]["v"]]
    assert parse_problem(as_list).order == 4
    for broken in ({"mode": "other"}, {"x_vars": []}, {"x_vars": ["x"], "y_vars": ["u"], "jet": {}},
                   {"x_vars": ["x"], "y_vars": ["u"], "Q": "u", "jet": []}, []):
        with pytest.raises(ProblemError):
            parse_problem(broken)


def test_bundled_problem_files_load():
    for path in sorted(PROBLEMS.glob("*.json")):
        assert load_problem(path).describe()["jet_order"] >= 2
