"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 verification failure,
3 search exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import CodeShape, all_r_optimal_params, conv_generalized_singleton, r_optimal_params
from .construct import (
    LiftError,
    SearchExhausted,
    build_mds,
    derive_plan,
    import_base_encoder,
)
from .distance import conv_free_distance
from .linalg import is_p_independent_constant
from .pbasis import is_p_generator_sequence, is_p_linearly_independent, last_block_params, p_dimension, p_standard_form
from .pcode import PCodeError, emit_pcode, read_pcode, write_pcode
from .ring import leading_coeff
from .trellis import BudgetExceeded

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_SEARCH = 0, 1, 2, 3

ORDER_NOTE = (
    "order projection convention: a codeword v of order j satisfies "
    "p^(j-1) v in the image of p^(r-1) times the base encoder"
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(fields: dict, as_json: bool, out):
    if as_json:
        out.write(json.dumps(fields) + "\n")
    else:
        out.write(" ".join(f"{k}={_fmt(v)}" for k, v in fields.items()) + "\n")


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    return str(v)


def _shape(args) -> CodeShape:
    return CodeShape(args.n, args.k, args.delta, args.p, args.r)


def _cmd_bounds(args, out):
    shape = _shape(args)
    singleton = conv_generalized_singleton(shape)
    plan_nu = shape.delta // shape.k
    ell = shape.k * (plan_nu + 1) - shape.delta
    profile = r_optimal_params(ell, shape.r)
    _emit(
        {"singleton": singleton, "nu": plan_nu, "ell": ell, "ell_profile": list(profile)},
        args.json,
        out,
    )
    return EXIT_OK


def _cmd_optimal(args, out):
    if args.all:
        profiles = sorted((p.counts for p in all_r_optimal_params(args.k, args.r)), reverse=True)
        if args.json:
            out.write(json.dumps({"count": len(profiles), "profile": [list(p) for p in profiles]}) + "\n")
        else:
            out.write(f"count={len(profiles)}\n")
            for p in profiles:
                out.write(f"profile={_fmt(p)}\n")
    else:
        profile = r_optimal_params(args.k, args.r)
        _emit({"profile": list(profile), "sum": profile.total}, args.json, out)
    return EXIT_OK


def _cmd_construct(args, out):
    shape = _shape(args)
    base = None
    if args.base:
        base = import_base_encoder(args.base, derive_plan(shape))
    enc, report = build_mds(shape, seed=args.seed, budget=args.budget, base=base, max_degree=args.max_degree)
    write_pcode(args.out, enc)
    fields = {
        "distance": report.value,
        "certified": report.certified,
        "bound": conv_generalized_singleton(shape),
        "k": enc.k,
        "out": args.out,
    }
    _emit(fields, args.json, out)
    return EXIT_OK


def _cmd_distance(args, out):
    enc = read_pcode(args.input)
    report = conv_free_distance(enc, max_degree=args.max_degree, exhaustive=args.certify)
    fields = {"distance": report.value, "certified": report.certified}
    if args.json:
        fields["search_degree"] = report.search_degree
        fields["method"] = report.note
        _emit(fields, True, out)
    else:
        _emit(fields, False, out)
        out.write(f"search_degree={report.search_degree} method={report.note.replace(' ', '-')}\n")
    return EXIT_OK


def _cmd_standard_form(args, out):
    enc = read_pcode(args.input)
    form = p_standard_form(enc)
    if args.json:
        payload = {
            "profile": list(form.profile),
            "permutation": list(form.permutation),
            "pcode": emit_pcode(form.encoder),
        }
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(f"profile={_fmt(form.profile)} permutation={_fmt(form.permutation)}\n")
        out.write(emit_pcode(form.encoder))
    return EXIT_OK


def _cmd_verify(args, out):
    enc = read_pcode(args.input)
    rows = enc.rows
    nonzero = bool(rows) and not any(v.is_zero() for v in rows)
    checks = {}
    checks["generator_sequence"] = is_p_generator_sequence(rows)
    checks["independent"] = nonzero and is_p_linearly_independent(rows)
    checks["reduced"] = checks["independent"] and is_p_independent_constant(
        [leading_coeff(v) for v in rows], enc.context
    )
    fields = {name: ok for name, ok in checks.items()}
    if checks["reduced"]:
        fields["p_dimension"] = p_dimension(rows, enc.context, enc.n)
        fields["p_degree"] = sum(v.degree for v in rows)
        nu, ell, profile = last_block_params(enc)
        fields["nu"] = nu
        fields["ell_profile"] = list(profile)
    ok = all(checks.values())
    fields["passed"] = ok
    if args.json:
        fields["note"] = ORDER_NOTE
        _emit(fields, True, out)
    else:
        out.write(" ".join(f"{k}={'pass' if v is True else 'fail' if v is False else _fmt(v)}"
                           for k, v in fields.items() if k != "passed") + "\n")
        out.write(f"passed={_fmt(ok)}\n")
        out.write(f"note: {ORDER_NOTE}\n")
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zprconv", description="Convolutional codes over Z_{p^r}.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def shape_args(p):
        for name in ("n", "k", "delta", "p", "r"):
            p.add_argument(f"--{name}", type=int, required=True)

    p = sub.add_parser("bounds", help="generalized Singleton bound and last-block profile")
    shape_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("optimal-params", help="r-optimal parameter profiles")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--all", action="store_true", help="list every optimal profile")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_optimal)

    p = sub.add_parser("construct", help="build an MDS code by lifting a base code")
    shape_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--base", help="PCODE file of a base encoder over Z_p")
    p.add_argument("--budget", type=int, default=2**18, help="base search budget")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("distance", help="free distance of an encoder")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--certify", action="store_true", help="run the exact trellis search")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("standard-form", help="p-standard form of a constant encoder")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_standard_form)

    p = sub.add_parser("verify", help="check the p-basis properties of an encoder")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        err.write(parser.format_usage())
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        return args.func(args, out)
    except SearchExhausted as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SEARCH
    except BudgetExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SEARCH
    except LiftError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_VERIFY
    except (PCodeError, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main():
    sys.exit(run())
