import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from quatfa.cli import EXIT_FAIL, EXIT_OK, EXIT_PRECONDITION, EXIT_SPEC, EXIT_USAGE, main
from quatfa.hbstar import diagonal_algebra, matrix_algebra
from quatfa.hhilbert import HilbertHBimodule, dual_from_real


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def test_theta_norms_suite_text():
    code, out, _ = run("verify", "--suite", "theta-norms", "--trials", "5", "--format", "text")
    assert code == EXIT_OK
    first = out.splitlines()[0]
    assert first.startswith("PASS theta-norms") and "epsilon=1 " in first and "hilbert=2" in first
    assert out.splitlines()[-1] == "PASS all seed=0"


def test_vacuous_run():
    code, out, _ = run("verify", "--suite", "all", "--trials", "0")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["pass"] and len(report["suites"]) == 13


def test_usage_errors(monkeypatch):
    assert run("verify", "--suite", "nope")[0] == EXIT_USAGE
    assert run("verify")[0] == EXIT_USAGE
    assert run("compute", "norms")[0] == EXIT_USAGE
    assert run("verify", "--suite", "quaternion", "--trials", "-2")[0] == EXIT_USAGE
    monkeypatch.setenv("QUATFA_SEED", "abc")
    assert run("verify", "--suite", "quaternion", "--trials", "1")[0] == EXIT_USAGE


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == EXIT_OK
    assert main(["verify", "--help"]) == EXIT_OK
    assert "example-TL" in capsys.readouterr().out


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("QUATFA_SEED", "17")
    code, out, _ = run("verify", "--suite", "quaternion", "--trials", "2")
    assert code == EXIT_OK and json.loads(out)["seed"] == 17
    assert run("verify", "--suite", "quaternion", "--trials", "2", "--seed", "17")[1] == out


def test_reports_are_reproducible():
    args = ("verify", "--suite", "all", "--trials", "3", "--seed", "5")
    first = run(*args)[1]
    assert run(*args)[1] == first
    assert run(*args, "--jobs", "2")[1] == first
    assert run("verify", "--suite", "all", "--trials", "3", "--seed", "6")[1] != first


def test_timing_flag():
    code, out, _ = run("verify", "--suite", "example-TL", "--trials", "1", "--timing")
    assert code == EXIT_OK and "wall_time" in json.loads(out)["suites"][0]


def test_failing_suite_exit_code():
    code, out, _ = run("verify", "--suite", "quaternion", "--trials", "2", "--tol", "-1")
    assert code == EXIT_FAIL
    assert not json.loads(out)["pass"]


def test_gelfand_suite_with_spec(tmp_path):
    spec = write(tmp_path, "diag3.json", diagonal_algebra(3).to_spec())
    code, out, _ = run("verify", "--suite", "gelfand", "--spec", spec, "--trials", "5")
    assert code == EXIT_OK
    assert json.loads(out)["suites"][0]["details"]["points"] == 3


def test_bimodule_spec_joins_polarization(tmp_path):
    from quatfa.hmodule import make_hthlr

    spec = write(tmp_path, "hthlr.json", make_hthlr().to_spec())
    assert run("verify", "--suite", "polarization", "--spec", spec, "--trials", "3")[0] == EXIT_OK


def test_spec_errors(tmp_path):
    bad = write(tmp_path, "bad.json", '{"n": 2,\n  "generators": [}')
    code, _, err = run("verify", "--suite", "gelfand", "--spec", bad)
    assert code == EXIT_SPEC and "line 2 column" in err
    assert run("verify", "--suite", "gelfand", "--spec", str(tmp_path / "missing.json"))[0] == EXIT_SPEC
    assert run("compute", "gelfand", "--spec", write(tmp_path, "list.json", "[1, 2]"))[0] == EXIT_SPEC
    assert run("verify", "--suite", "gn", "--spec", write(tmp_path, "other.json", {"x": 1}))[0] == EXIT_SPEC
    assert run("compute", "norms", "--spec", write(tmp_path, "empty.json", {}))[0] == EXIT_SPEC
    assert run("compute", "norms", "--spec", write(tmp_path, "t.json", {"tensor": [1, 2, 3]}))[0] == EXIT_SPEC
    assert run("compute", "riesz", "--spec", write(tmp_path, "r.json", {"T": [0] * 16}))[0] == EXIT_SPEC


def test_compute_norms_theta(tmp_path):
    spec = write(tmp_path, "theta.json", {"tensor": np.eye(4).tolist()})
    code, out, _ = run("compute", "norms", "--spec", spec)
    assert code == EXIT_OK
    assert json.loads(out) == {"epsilon": 1.0, "hilbert": 2.0}


def test_compute_riesz(tmp_path):
    zero = write(tmp_path, "zero.json", {"rank": 2, "T": np.zeros((16, 8)).tolist()})
    code, out, _ = run("compute", "riesz", "--spec", zero)
    assert code == EXIT_OK
    result = json.loads(out)
    assert result["y"] == [0.0] * 8 and result["norm"] == 0.0 and result["norm_L"] == 0.0
    rng = np.random.default_rng(0)
    T = dual_from_real(HilbertHBimodule.standard(2), rng.normal(size=(4, 2)))
    spec = write(tmp_path, "t.json", {"rank": 2, "T": T.matrix.tolist()})
    result = json.loads(run("compute", "riesz", "--spec", spec)[1])
    assert math.isclose(result["y_norm"], result["norm_L"], rel_tol=1e-9)
    result = json.loads(run("compute", "norms", "--spec", spec)[1])
    assert result["norm"] <= result["norm_L"] + 1e-12


def test_compute_riesz_rejects_non_intertwining(tmp_path):
    spec = write(tmp_path, "bad.json", {"rank": 1, "T": np.ones((16, 4)).tolist()})
    code, out, _ = run("compute", "riesz", "--spec", spec)
    assert code == EXIT_PRECONDITION
    assert json.loads(out)["error"] == "NotIntertwiningError"


def test_compute_gelfand(tmp_path):
    code, out, _ = run("compute", "gelfand", "--spec", write(tmp_path, "d.json", diagonal_algebra(3).to_spec()))
    assert code == EXIT_OK and json.loads(out)["points"] == 3
    code, out, _ = run("compute", "gelfand", "--spec", write(tmp_path, "m.json", matrix_algebra(2).to_spec()))
    assert code == EXIT_PRECONDITION
    payload = json.loads(out)
    assert payload["error"] == "not-normal" and payload["defect"] > 1e-6
    w = np.asarray(payload["witness"])
    assert w.shape == (4, 2, 2)
    m = w[0]
    assert np.abs(m.T @ m - m @ m.T).max() > 1e-6


def test_compute_decompose(tmp_path):
    A = diagonal_algebra(3)
    element = np.kron(np.diag([1.0, 2.0, 3.0]), np.eye(4))
    spec = write(tmp_path, "dec.json", {"algebra": A.to_spec(), "element": element.tolist()})
    code, out, _ = run("compute", "decompose", "--spec", spec)
    assert code == EXIT_OK
    comps = np.asarray(json.loads(out)["components"])
    np.testing.assert_allclose(comps[0], np.diag([1.0, 2.0, 3.0]), atol=1e-14)
    bad = write(tmp_path, "bad.json", {"algebra": A.to_spec(), "element": np.ones((12, 12)).tolist()})
    assert run("compute", "decompose", "--spec", bad)[0] == EXIT_SPEC


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quatfa", "verify", "--suite", "example-TL", "--trials", "1", "--format", "text"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "norm_L=1.41421356237" in proc.stdout
