"""Command-line interface.

Exit codes::

    0  success (for ``verify``: every check passed)
    1  ``verify`` ran but at least one check failed
    2  malformed or invalid input (bad JSON, invalid algebra, bad flags)
    3  an input functional is not representable
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import serialize as ser
from .decompose import decompose
from .exceptions import ConsistencyError, DimensionMismatch, RepresentabilityError
from .functional import DEFAULT_TOL, check_representable, random_representable
from .gns import build_gns, reconstruct
from .star_algebra import (
    cyclic_group_table,
    function_algebra,
    group_algebra,
    matrix_algebra,
    symmetric_group_table,
    validate,
)
from .verify import all_passed, run_checks

log = logging.getLogger("star_lebesgue")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_NOT_REPRESENTABLE = 3

TOL_ENV = "STAR_LEBESGUE_TOL"


class _Fail(Exception):
    def __init__(self, code: int, report: dict):
        super().__init__(report.get("error", ""))
        self.code = code
        self.report = report


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise _Fail(EXIT_INVALID, {"error": f"{TOL_ENV}={raw!r} is not a number"}) from None


def _tolerance(args) -> float:
    tol = args.tolerance if args.tolerance is not None else _default_tol()
    if not (0.0 < tol < 1e-2):
        raise _Fail(EXIT_INVALID, {"error": f"tolerance must lie in (0, 1e-2), got {tol}"})
    return tol


def _emit(report: dict, args) -> None:
    text = ser.dumps(report, args.pretty)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_algebra(path):
    alg = ser.algebra_from_json(ser.load_json(path))
    report = validate(alg)
    if not report.ok:
        raise _Fail(EXIT_INVALID, {"error": "algebra violates *-algebra axioms", "validation": ser.validation_to_json(report)})
    return alg


def _load_functional(path, alg):
    return ser.functional_from_json(ser.load_json(path), alg.dim)


def _require_representable(alg, fns: dict, tol: float) -> None:
    certs = {name: check_representable(alg, f, tol) for name, f in fns.items()}
    bad = [name for name, c in certs.items() if not c.representable]
    if bad:
        raise _Fail(
            EXIT_NOT_REPRESENTABLE,
            {
                "error": f"not representable: {', '.join(bad)}",
                "certificates": {name: ser.certificate_to_json(c) for name, c in certs.items()},
            },
        )


def cmd_decompose(args) -> int:
    tol = _tolerance(args)
    alg = _load_algebra(args.algebra)
    f = _load_functional(args.f, alg)
    g = _load_functional(args.g, alg)
    _require_representable(alg, {"f": f, "g": g}, tol)
    res = decompose(alg, f, g, tol)
    report = {"command": "decompose", "tolerance": tol, "f": ser.encode_complex(f.values)}
    report.update(ser.decomposition_to_json(res, g))
    _emit(report, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = _tolerance(args)
    alg = _load_algebra(args.algebra)
    f = _load_functional(args.f, alg)
    g = _load_functional(args.g, alg)
    _require_representable(alg, {"f": f, "g": g}, tol)
    override = _load_functional(args.override, alg) if args.override else None
    res, checks = run_checks(alg, f, g, tol, seed=args.seed, g_a_override=override)
    passed = all_passed(checks)
    report = {
        "command": "verify",
        "tolerance": tol,
        "seed": args.seed,
        "override": bool(override is not None),
        "passed": passed,
        "checks": [c.to_json() for c in checks],
        "g_a": ser.encode_complex(res.g_a.values),
        "g_s": ser.encode_complex(res.g_s.values),
    }
    _emit(report, args)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def _build(builder: str, param: str):
    try:
        if builder == "function":
            return function_algebra(int(param))
        if builder == "matrix":
            return matrix_algebra(int(param))
        if builder == "group":
            p = param.upper()
            if p.startswith("Z") and p[1:].isdigit():
                return group_algebra(cyclic_group_table(int(p[1:])))
            if p.startswith("S") and p[1:].isdigit():
                table, labels = symmetric_group_table(int(p[1:]))
                return group_algebra(table, labels)
            raise ValueError(f"unknown group {param!r} (use Zn or Sn)")
    except ValueError as exc:
        raise _Fail(EXIT_INVALID, {"error": str(exc)}) from None
    raise _Fail(EXIT_INVALID, {"error": f"unknown builder {builder!r} (use function, matrix or group)"})


def cmd_generate(args) -> int:
    alg = _build(args.builder, args.param)
    if args.k < 0:
        raise _Fail(EXIT_INVALID, {"error": "--k must be >= 0"})
    f = random_representable(alg, args.k, args.seed)
    alg_doc = ser.algebra_to_json(alg)
    f_doc = ser.functional_to_json(f)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "algebra.json").write_text(ser.dumps(alg_doc, args.pretty))
        (out / "functional.json").write_text(ser.dumps(f_doc, args.pretty))
    else:
        sys.stdout.write(ser.dumps({"algebra": alg_doc, "functional": f_doc}, args.pretty))
    return EXIT_OK


def cmd_gns(args) -> int:
    tol = _tolerance(args)
    alg = _load_algebra(args.algebra)
    f = _load_functional(args.f, alg)
    _require_representable(alg, {"f": f}, tol)
    gns = build_gns(alg, f, tol)
    scale = max(float(np.abs(f.values).max(initial=0.0)), 1e-300)
    resid = float(np.abs(reconstruct(gns).values - f.values).max(initial=0.0)) / scale
    report = {"command": "gns", "tolerance": tol}
    report.update(ser.gns_to_json(gns, resid))
    _emit(report, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=None, help=f"numerical tolerance (default 1e-9 or ${TOL_ENV})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output file (directory for generate)")
    common.add_argument("--pretty", action="store_true", help="indent JSON output")

    parser = argparse.ArgumentParser(
        prog="star-lebesgue",
        description="Lebesgue decomposition of representable functionals on finite-dimensional *-algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="split g into f-absolutely continuous and f-singular parts")
    p.add_argument("algebra")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", parents=[common], help="run every check on the decomposition of g against f")
    p.add_argument("algebra")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--override", default=None, help="replace g_a by this functional before checking (fault injection)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", parents=[common], help="write a builder algebra and a random representable functional")
    p.add_argument("builder", choices=["function", "matrix", "group"])
    p.add_argument("param", help="size for function/matrix, Zn or Sn for group")
    p.add_argument("--k", type=int, default=1, help="number of terms tau(x* a x)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("gns", parents=[common], help="print the GNS triple of a functional")
    p.add_argument("algebra")
    p.add_argument("f")
    p.set_defaults(func=cmd_gns)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except _Fail as exc:
        _emit(exc.report, args)
        return exc.code
    except (ser.InputError, DimensionMismatch) as exc:
        _emit({"error": str(exc)}, args)
        return EXIT_INVALID
    except RepresentabilityError as exc:
        report = {"error": str(exc)}
        if exc.certificate is not None:
            report["certificate"] = ser.certificate_to_json(exc.certificate)
        _emit(report, args)
        return EXIT_NOT_REPRESENTABLE
    except ConsistencyError as exc:
        log.error("internal consistency failure: %s", exc)
        _emit({"error": f"internal consistency failure: {exc}"}, args)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
