"""Command-line entry point ``quatfa``.

Exit codes: 0 success, 1 a verification suite failed, 2 usage error,
3 unreadable or malformed spec file, 4 a mathematical precondition failed
(the payload on stdout carries the offending data).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import hbstar, hhilbert, hmodule, hnormed
from .errors import (
    InvalidRepresentationError,
    NotCommutativeError,
    NotIntertwiningError,
    RankDeficiencyError,
    UnsupportedNormError,
)
from .suites import SUITE_HELP, SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SPEC, EXIT_PRECONDITION = 0, 1, 2, 3, 4
PRECONDITION_ERRORS = (
    NotCommutativeError,
    NotIntertwiningError,
    RankDeficiencyError,
    InvalidRepresentationError,
    UnsupportedNormError,
)
SPEC_ERRORS = (KeyError, TypeError, ValueError, IndexError)


class SpecError(Exception):
    """Spec file could not be read or does not match the expected schema."""


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)) and not isinstance(obj, bool):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dump(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True)


def load_spec(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError(f"{path}: {exc.strerror or exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise SpecError(f"{path}: top level must be a JSON object")
    return data


def _schema(fn, what: str):
    try:
        return fn()
    except PRECONDITION_ERRORS:
        raise
    except SPEC_ERRORS as exc:
        raise SpecError(f"invalid {what} spec: {exc}") from exc


def parse_verify_spec(data: dict):
    if "generators" in data:
        return _schema(lambda: hbstar.HStarAlgebra.from_spec(data), "algebra")
    if "left_i" in data:
        return _schema(lambda: hmodule.HBimodule.from_spec(data, name="spec"), "bimodule")
    raise SpecError("spec must describe an algebra ('generators') or a bimodule ('left_i', ...)")


def _hilbert_space(data: dict) -> hhilbert.HilbertHBimodule:
    if "module" in data:
        module = hmodule.HBimodule.from_spec(data["module"], name="spec")
    elif "rank" in data:
        module = hmodule.quaternionize(int(data["rank"]))
    else:
        raise KeyError("'module' or 'rank'")
    form = hnormed.standard_norm(module).form if data.get("form") is None else np.asarray(data["form"], dtype=float)
    return hhilbert.HilbertHBimodule(module, form)


def _dual_element(data: dict) -> hhilbert.DualElementYr:
    Y = _schema(lambda: _hilbert_space(data), "Hilbert bimodule")
    matrix = _schema(lambda: np.asarray(data["T"], dtype=float).reshape(16, Y.dim), "dual element")
    return hhilbert.DualElementYr(Y, matrix)


def _algebra(data: dict) -> hbstar.HStarAlgebra:
    inner = data.get("algebra", data)
    return _schema(lambda: hbstar.HStarAlgebra.from_spec(inner), "algebra")


def compute_riesz(data: dict) -> dict:
    T = _dual_element(data)
    y = hhilbert.riesz_represent(T)
    norm, norm_l = hhilbert.dual_norms(T)
    return {"y": y.coords, "norm": norm, "norm_L": norm_l, "y_norm": T.space.norm(y)}


def compute_norms(data: dict) -> dict:
    out = {}
    if "tensor" in data:
        p = _schema(lambda: hhilbert.HTensorElement(np.asarray(data["tensor"], dtype=float)), "tensor")
        out.update(epsilon=hhilbert.epsilon_norm(p), hilbert=hhilbert.hil_norm(p))
    if "T" in data:
        norm, norm_l = hhilbert.dual_norms(_dual_element(data))
        out.update(norm=norm, norm_L=norm_l)
    if not out:
        raise SpecError("norms spec needs 'tensor' (4x4) and/or 'T' (16 x dim) with a space")
    return out


def compute_decompose(data: dict) -> dict:
    A = _algebra(data)
    a = _schema(lambda: hbstar.decompose(np.asarray(data["element"], dtype=float), A), "element")
    return {"components": a.components, "coords": a.coords()}


def compute_gelfand(data: dict) -> dict:
    return hbstar.gelfand_transform(_algebra(data)).to_spec()


COMPUTE = {
    "riesz": compute_riesz,
    "norms": compute_norms,
    "decompose": compute_decompose,
    "gelfand": compute_gelfand,
}


def _default_seed() -> int:
    raw = os.environ.get("QUATFA_SEED")
    return 0 if raw is None or raw == "" else int(raw)


def _int_at_least(low: int):
    def parse(text: str) -> int:
        value = int(text)
        if value < low:
            raise argparse.ArgumentTypeError(f"must be >= {low}, got {value}")
        return value

    parse.__name__ = "integer"
    return parse


def build_parser() -> argparse.ArgumentParser:
    suites = "\n".join(f"  {name:18s} {text}" for name, text in SUITE_HELP.items())
    parser = argparse.ArgumentParser(
        prog="quatfa",
        description="Verify and compute with quaternionic bimodules, Hilbert structures and H-B*-algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser(
        "verify",
        help="run seeded verification suites",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"suites:\n{suites}\n\nA --spec bimodule joins the polarization and category fixtures;\n"
        "a --spec algebra joins the cstar, gn and gelfand fixtures.",
    )
    v.add_argument("--suite", required=True, choices=["all", *SUITES], metavar="SUITE", help="suite id or 'all'")
    v.add_argument("--seed", type=int, default=None, help="base seed (default: $QUATFA_SEED or 0)")
    v.add_argument("--trials", type=_int_at_least(0), default=1000, help="random trials per suite (default 1000)")
    v.add_argument("--tol", type=float, default=1e-9, help="residual tolerance (default 1e-9)")
    v.add_argument("--format", choices=["json", "text"], default="json")
    v.add_argument("--spec", help="JSON bimodule or algebra spec added to the fixtures")
    v.add_argument("--timing", action="store_true", help="include wall time (reports stop being reproducible)")
    v.add_argument("--jobs", type=_int_at_least(1), default=None, help="worker processes for suites (default: CPU count)")
    c = sub.add_parser("compute", help="compute an artifact from a spec file")
    c.add_argument("what", choices=sorted(COMPUTE))
    c.add_argument("--spec", required=True, help="JSON input file")
    c.add_argument("--format", choices=["json"], default="json")
    return parser


def _timed_suite(name, seed, trials, tol, spec):
    start = time.perf_counter()
    d = run_suite(name, seed=seed, trials=trials, tol=tol, spec=spec).to_dict()
    return d, time.perf_counter() - start


def _verify(args, out) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    spec = parse_verify_spec(load_spec(args.spec)) if args.spec else None
    names = list(SUITES) if args.suite == "all" else [args.suite]
    jobs = min(len(names), args.jobs or os.cpu_count() or 1)
    tasks = [(name, seed, args.trials, args.tol, spec) for name in names]
    if jobs == 1:
        results = [_timed_suite(*t) for t in tasks]
    else:
        # every suite seeds itself, so the report does not depend on scheduling
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_timed_suite, *zip(*tasks)))
    reports = []
    for d, wall in results:
        if args.timing:
            d["wall_time"] = wall
        reports.append(d)
    ok = all(r["pass"] for r in reports)
    if args.format == "json":
        out.write(dump({"seed": seed, "trials": args.trials, "tol": args.tol, "pass": ok, "suites": reports}) + "\n")
    else:
        for r in reports:
            extra = "".join(f" {k}={_fmt(v)}" for k, v in sorted(r["details"].items()))
            timing = f" wall_time={r['wall_time']:.3f}s" if "wall_time" in r else ""
            status = "PASS" if r["pass"] else "FAIL"
            out.write(f"{status} {r['suite']} trials={r['trials']} max_residual={r['max_residual']:.3e}{extra}{timing}\n")
        out.write(f"{'PASS' if ok else 'FAIL'} all seed={seed}\n")
    return EXIT_OK if ok else EXIT_FAIL


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    return json.dumps(_jsonable(v), sort_keys=True, separators=(",", ":"))


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "verify":
            try:
                _default_seed()
            except ValueError:
                err.write("quatfa: QUATFA_SEED must be an integer\n")
                return EXIT_USAGE
            return _verify(args, out)
        result = COMPUTE[args.what](load_spec(args.spec))
        out.write(dump(result) + "\n")
        return EXIT_OK
    except SpecError as exc:
        err.write(f"quatfa: {exc}\n")
        return EXIT_SPEC
    except NotCommutativeError as exc:
        out.write(dump({"error": "not-normal", "message": str(exc), "witness": exc.witness.components, "defect": exc.defect}) + "\n")
        err.write(f"quatfa: {exc}\n")
        return EXIT_PRECONDITION
    except PRECONDITION_ERRORS as exc:
        out.write(dump({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        err.write(f"quatfa: {exc}\n")
        return EXIT_PRECONDITION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
