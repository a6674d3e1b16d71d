"""Acceptance criteria, one test each, at their stated tolerances.

Every test records a ``PASS``/``FAIL`` line in ``RESULTS``; the lines are
printed in the pytest terminal summary (see conftest.py) and immediately
when run with ``-s`` or as a script.
"""

import io
import math
import sys

import numpy as np
import pytest

from quatfa.cli import main
from quatfa.errors import NotCommutativeError
from quatfa.fixtures import fixture_bimodules
from quatfa.hbstar import diagonal_algebra, gelfand_transform, matrix_algebra
from quatfa.hhilbert import THETA, dual_norms, epsilon_norm, example_dual_gap, hil_norm
from quatfa.hmodule import structure_iso
from quatfa.suites import run_suite

RESULTS: dict[int, str] = {}


def record(number: int, title: str, checks: dict) -> None:
    """checks maps a label to (value, ok)."""
    ok = all(passed for _, passed in checks.values())
    body = ", ".join(f"{label}={_fmt(value)}" for label, (value, _) in checks.items())
    failed = [label for label, (_, passed) in checks.items() if not passed]
    line = f"{'PASS' if ok else 'FAIL'} criterion {number} {title}: {body}"
    if failed:
        line += f" [failed: {', '.join(failed)}]"
    RESULTS[number] = line
    print(line)
    assert ok, line


def _fmt(value):
    return f"{value:.3e}" if isinstance(value, float) else str(value)


def at_most(report, name, tol):
    value = report.residuals[name]
    return value, value <= tol


def no_failures(report, *names):
    bad = sum(report.failures[n] for n in names)
    return bad, bad == 0


def test_criterion_1_theta_norms():
    eps, hil = epsilon_norm(THETA), hil_norm(THETA)
    record(1, "theta tensor norms", {
        "epsilon": (eps, abs(eps - 1.0) <= 1e-12),
        "hilbert": (hil, abs(hil - 2.0) <= 1e-12),
    })


def test_criterion_2_dual_norm_gap():
    norm, norm_l = dual_norms(example_dual_gap())
    record(2, "dual norm gap", {
        "norm": (norm, abs(norm - 1.0) <= 1e-10),
        "norm_L": (norm_l, abs(norm_l - math.sqrt(2.0)) <= 1e-9),
    })


def test_criterion_3_polarization():
    rep = run_suite("polarization", seed=3, trials=1000)
    record(3, "polarization", {
        "reassembly": at_most(rep, "reassembly", 1e-12),
        "components-real": at_most(rep, "components-real", 1e-12),
        "re-idempotent": at_most(rep, "re-idempotent", 1e-12),
        "uniqueness": at_most(rep, "uniqueness", 1e-12),
        "perturbation-missed": no_failures(rep, "perturbation-detected"),
    })


def test_criterion_4_category():
    dims = {name: (X.real_dim, X.dim) for name, X in fixture_bimodules().items()}
    ranks = {name: int(np.linalg.matrix_rank(structure_iso(X).matrix)) for name, X in fixture_bimodules().items()}
    rep = run_suite("category", seed=4, trials=1000)
    record(4, "category equivalence", {
        "real-dims": (dims, all(r * 4 == d for r, d in dims.values())),
        "structure-iso-rank": (ranks, all(ranks[n] == dims[n][1] for n in dims)),
        "structure-iso-intertwining": at_most(rep, "structure-iso-intertwining", 1e-10),
        "structure-iso-actions": at_most(rep, "structure-iso-actions", 1e-10),
        "hthr-hthlr-intertwining": at_most(rep, "hthr-hthlr-intertwining", 1e-10),
        "hthr-hthlr-actions": at_most(rep, "hthr-hthlr-actions", 1e-10),
        "bijectivity-failures": no_failures(rep, *rep.failures),
    })


def test_criterion_5_functionals():
    tilde = run_suite("functional-lift", seed=5, trials=200)
    sep = run_suite("separation", seed=5, trials=200)
    hb = run_suite("hahn-banach", seed=5, trials=100)
    record(5, "functionals", {
        "tilde-isometry": at_most(tilde, "tilde-isometry", 1e-9),
        "separation-failures": no_failures(sep, "separates"),
        "hahn-banach-norm": at_most(hb, "norm-preserved", 1e-9),
        "hahn-banach-restricts": at_most(hb, "restricts", 1e-9),
    })


def test_criterion_6_hilbert_structure():
    rep = run_suite("hilbert-structure", seed=6, trials=1000)
    record(6, "Hilbert structures", {
        "two-sided-collapse": at_most(rep, "two-sided-collapse", 1e-10),
        "two-sided-roundtrip": at_most(rep, "two-sided-roundtrip", 1e-10),
        "right-module-roundtrip": at_most(rep, "right-module-roundtrip", 1e-10),
        "adjoint-law-bimodule": at_most(rep, "adjoint-law-bimodule", 1e-9),
        "adjoint-law-induced": at_most(rep, "adjoint-law-induced", 1e-9),
        "sharp-symmetry": at_most(rep, "sharp-symmetry", 1e-9),
        "cone-failures": no_failures(rep, "cone-membership"),
        "cauchy-schwarz": at_most(rep, "cauchy-schwarz", 1e-9),
        "intertwine-conjugation": at_most(rep, "intertwine-conjugation", 1e-9),
        "intertwine-unitary": at_most(rep, "intertwine-unitary", 1e-9),
    })


def test_criterion_7_riesz():
    rep = run_suite("riesz", seed=7, trials=200)
    record(7, "Riesz representation", {
        "representation": at_most(rep, "representation", 1e-9),
        "norm_L-vs-y": at_most(rep, "norm_L-equals-norm-y", 1e-8),
        "t_y-roundtrip": at_most(rep, "t_y-roundtrip", 1e-10),
    })


def test_criterion_8_algebras():
    cstar = run_suite("cstar", seed=8, trials=500)
    gn = run_suite("gn", seed=8, trials=500)
    gel = run_suite("gelfand", seed=8, trials=500)
    points = gelfand_transform(diagonal_algebra(3)).points
    with pytest.raises(NotCommutativeError) as info:
        gelfand_transform(matrix_algebra(2))
    defect = float(info.value.defect)
    record(8, "H-B*-algebras", {
        "cstar-identity": at_most(cstar, "cstar-identity", 1e-9),
        "gn-isometric": at_most(gn, "isometric", 1e-9),
        "gn-right-action": at_most(gn, "commutes-with-right-action", 1e-9),
        "diag-3-points": (points, points == 3),
        "gelfand-isometric": at_most(gel, "isometric", 1e-9),
        "gelfand-inverse": at_most(gel, "inverse", 1e-9),
        "gelfand-multiplicative": at_most(gel, "multiplicative", 1e-9),
        "M2-witness-defect": (defect, defect > 1e-6),
    })


def test_criterion_9_determinism():
    runs = []
    codes = []
    for _ in range(2):
        buf = io.StringIO()
        codes.append(main(["verify", "--suite", "all", "--seed", "42"], out=buf, err=io.StringIO()))
        runs.append(buf.getvalue().encode())
    record(9, "deterministic reports", {
        "bytes": (len(runs[0]), runs[0] == runs[1]),
        "exit-codes": (codes, codes == [0, 0]),
    })


if __name__ == "__main__":  # pragma: no cover
    sys.exit(pytest.main([__file__, "-q", "-s"]))
