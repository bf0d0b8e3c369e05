"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .appendix import NefPartition, PartitionError, run_appendix
from .closed_forms import closed_form_hyperplanes
from .corpus import EXAMPLES, get_example, regenerate
from .exact import NotLaurentError, coeff_to_text, parse_expression, require_laurent
from .periods import (CalibrationError, build_mirror, calibrate_iseries, check_period_condition, grassmannian_iseries,
                      projective_ci_iseries, projective_ci_lg)
from .polytope import newton_polytope, origin_in_interior
from .quiver import NotFanoError
from .transform import LemmaInapplicableError, ModelSpec, run_main_theorem

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_degrees(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"degrees must be comma-separated integers, got {text!r}")


def _spec(args) -> ModelSpec:
    if getattr(args, "N", None) is not None:
        if args.k is not None:
            raise UsageError("give either --k or --N, not both")
        return ModelSpec.projective(args.N, args.degrees)
    if args.k is None:
        raise UsageError("--k (or --N for projective space) is required")
    return ModelSpec.grassmannian(args.k, args.degrees)


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _series_text(values) -> str:
    return ", ".join(coeff_to_text(v) for v in values)


def _dump(args, data) -> None:
    if args.dump_pipeline:
        with open(args.dump_pipeline, "w") as fh:
            json.dump(data, fh, indent=2)


def cmd_generate(args) -> int:
    spec = _spec(args)
    if spec.ambient == "projective":
        f = projective_ci_lg(spec)
        _dump(args, {"spec": spec.to_json_data(), "result": f.to_text()})
    elif args.method == "main":
        trace = run_main_theorem(spec.n, spec.degrees, verify=args.strict_verify)
        f = trace.result
        _dump(args, trace.to_json_data())
    elif args.method == "appendix":
        partition = NefPartition.from_json(args.partition) if args.partition else None
        res = run_appendix(spec.n, spec.degrees, partition)
        f = res.result
        _dump(args, res.to_json_data())
    else:
        if any(d != 1 for d in spec.degrees) or not spec.degrees:
            raise UsageError("closed forms cover sections by hyperplanes only")
        f = closed_form_hyperplanes(spec.n, len(spec.degrees))
        _dump(args, {"spec": spec.to_json_data(), "result": f.to_text()})
    _emit(args, f.to_text(), {"spec": spec.to_json_data(), "method": args.method, "mirror": f.to_json_data(),
                              "text": f.to_text()})
    return EXIT_OK


def cmd_iseries(args) -> int:
    spec = _spec(args)
    n = args.terms or 8
    if spec.ambient == "grassmannian":
        calibration = calibrate_iseries()
        series = grassmannian_iseries(spec, n, calibration.reading)
        text = f"{_series_text(series.coefficients)}\nreading: {calibration.reading.describe()}"
        data = {"spec": spec.to_json_data(), "iseries": series.to_json_data(),
                "calibration": calibration.to_json_data()}
    else:
        series = projective_ci_iseries(spec, n)
        text = _series_text(series.coefficients)
        data = {"spec": spec.to_json_data(), "iseries": series.to_json_data()}
    _emit(args, text, data)
    return EXIT_OK


def _report_text(r) -> str:
    lines = [f"verdict: {r.verdict}", f"period:  {_series_text(r.period.coefficients)}",
             f"iseries: {_series_text(r.iseries.coefficients)}"]
    if r.alpha is not None:
        lines.append(f"alpha: {coeff_to_text(r.alpha)}")
    if r.mismatches:
        lines.append(f"mismatches at t^{r.mismatches}")
    return "\n".join(lines)


def cmd_period_check(args) -> int:
    spec = _spec(args)
    method = args.method
    if spec.ambient == "projective" and method == "main":
        method = "closed-form"
    report = check_period_condition(spec, method, args.terms)
    _emit(args, _report_text(report), report.to_json_data())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_compare_methods(args) -> int:
    spec = _spec(args)
    if spec.ambient != "grassmannian":
        raise UsageError("compare-methods needs a Grassmannian spec")
    main = check_period_condition(spec, "main", args.terms)
    other = check_period_condition(spec, "appendix", main.terms)
    agree = main.period == other.period
    ok = agree and main.passed and other.passed
    text = (f"periods agree: {'yes' if agree else 'no'}\n[main]\n{_report_text(main)}\n"
            f"[appendix]\n{_report_text(other)}")
    _emit(args, text, {"agree": agree, "main": main.to_json_data(), "appendix": other.to_json_data()})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_newton(args) -> int:
    if args.poly:
        try:
            f = require_laurent(parse_expression(args.poly), "polynomial")
        except NotLaurentError as exc:
            raise UsageError(str(exc))
    else:
        f = build_mirror(_spec(args), args.method)
    poly = newton_polytope(f)
    interior = origin_in_interior(f)
    verts = poly.sorted_vertices()
    text = (f"variables: {', '.join(f.variables)}\nvertices ({len(verts)}):\n"
            + "\n".join("  " + " ".join(str(x) for x in v) for v in verts)
            + f"\norigin in interior: {'yes' if interior else 'no'}")
    _emit(args, text, {"variables": list(f.variables), "vertices": [list(v) for v in verts],
                       "origin_in_interior": interior})
    return EXIT_OK


def cmd_examples(args) -> int:
    if args.all:
        records = sorted(EXAMPLES, key=lambda e: e.id)
    elif args.id:
        try:
            records = [get_example(args.id)]
        except KeyError as exc:
            raise UsageError(str(exc.args[0]))
    else:
        raise UsageError("give --id or --all")
    rows = []
    for e in records:
        got = regenerate(e)
        rows.append({"id": e.id, "k": e.k, "degrees": list(e.degrees), "method": e.method,
                     "pass": got == e.expected_laurent(), "result": got.to_text()})
    text = "\n".join(f"{'pass' if r['pass'] else 'FAIL'}  {r['id']}" for r in rows)
    _emit(args, text, rows)
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--dump-pipeline", metavar="PATH", default=argparse.SUPPRESS)
    common.add_argument("--terms", type=int, default=argparse.SUPPRESS, help="number of series coefficients")
    common.add_argument("--strict-verify", action="store_true", default=argparse.SUPPRESS,
                        help="check lemma preconditions on every intermediate triplet")

    parser = argparse.ArgumentParser(prog="lgmirror", description="Laurent mirrors of complete intersections in G(2, k+2).")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--dump-pipeline", metavar="PATH", default=None)
    parser.add_argument("--terms", type=int, default=None)
    parser.add_argument("--strict-verify", action="store_true", default=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def spec_args(p, methods=("main", "appendix", "closed-form")):
        p.add_argument("--k", type=int, default=None, help="ambient G(2, k+2)")
        p.add_argument("--N", type=int, default=None, help="ambient projective space P^N")
        p.add_argument("--degrees", type=parse_degrees, default=(), help="comma-separated degrees")
        if methods:
            p.add_argument("--method", choices=methods, default="main")

    p = sub.add_parser("generate", parents=[common], help="build a Laurent mirror")
    spec_args(p)
    p.add_argument("--partition", default=None, help='nef-partition JSON {"E":[..],"Em":[[..]],"sm":[..]}')
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("iseries", parents=[common], help="regularized I-series coefficients")
    spec_args(p, methods=())
    p.set_defaults(func=cmd_iseries)

    p = sub.add_parser("period-check", parents=[common], help="compare the main period with the I-series")
    spec_args(p)
    p.set_defaults(func=cmd_period_check)

    p = sub.add_parser("compare-methods", parents=[common], help="main route against the torus chart route")
    spec_args(p, methods=())
    p.set_defaults(func=cmd_compare_methods)

    p = sub.add_parser("newton", parents=[common], help="Newton polytope of a mirror or a given polynomial")
    spec_args(p)
    p.add_argument("--poly", default=None, help="Laurent polynomial text instead of a spec")
    p.set_defaults(func=cmd_newton)

    p = sub.add_parser("examples", parents=[common], help="regenerate the example corpus")
    p.add_argument("--id", default=None)
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LemmaInapplicableError, NotLaurentError, CalibrationError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, NotFanoError, PartitionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
