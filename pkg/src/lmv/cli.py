"""Command-line front end.

Exit codes: 0 all required checks pass, 1 a check failed, 2 usage or
parameter error, 3 resource exhaustion.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from contextlib import ExitStack
from pathlib import Path

from .cache import CACHE_ENV, GBCache
from .charts import (
    ParameterError,
    blowup_chart,
    chart_special_fiber,
    check_parameters,
    general_chart_reduced,
    kraemer_chart,
    signature2_chart,
)
from .fields import FieldError
from .groebner import ResourceExhausted
from .ideal import ideal_membership, krull_dimension, max_pairs_limit
from .idealfile import IdealFile, IdealFileError
from .orders import parse_order
from .parsing import ParseError
from .pipelines import kraemer_pipeline, verify_semistability
from .polynomial import ContextError
from .report import emit_report
from .scheme import smoothness_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"lmv: error: usage: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="lmv", description="Local-model chart verifier")
    parser.add_argument("--no-cache", action="store_true", help="disable the Groebner basis cache")
    parser.add_argument("--max-pairs", type=int, default=None, help="pair-count ceiling per basis")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="semistability pipeline for signature (2, n-2)")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--u", type=int, default=1)
    v.add_argument("--charts", default="t1,t2,t3")
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--out", type=Path)

    k = sub.add_parser("kraemer", help="pipeline for signature (1, n-1)")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--p", type=int, required=True)
    k.add_argument("--u", type=int, default=1)
    k.add_argument("--format", choices=("json", "text"), default="text")
    k.add_argument("--out", type=Path)

    c = sub.add_parser("chart", help="print a chart ideal as an ideal file")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--r", type=int, default=2)
    c.add_argument("--which", choices=("base", "t1", "t2", "t3"), default="base")
    c.add_argument("--fiber", choices=("special", "mixed"), default="mixed")
    c.add_argument("--p", type=int, default=3)
    c.add_argument("--u", type=int, default=1)

    g = sub.add_parser("gb", help="reduced Groebner basis of an ideal file")
    g.add_argument("--input", type=Path, required=True)
    g.add_argument("--order", choices=("grevlex", "lex"), default=None)

    ch = sub.add_parser("check", help="single engine operation on an ideal file")
    ch.add_argument("--input", type=Path, required=True)
    ch.add_argument("--op", choices=("membership", "dimension", "smooth"), required=True)
    ch.add_argument("--args", nargs="*", default=[],
                    help="membership: POLY; smooth: EXPECTED_DIM [VAR ...]")
    return parser


def _emit(report, args) -> int:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            emit_report(report, args.format, fh)
    else:
        emit_report(report, args.format, sys.stdout)
    return report.exit_code()


def _cmd_verify(args) -> int:
    charts = [c.strip() for c in args.charts.split(",") if c.strip()]
    return _emit(verify_semistability(args.n, args.p, args.u, charts), args)


def _cmd_kraemer(args) -> int:
    return _emit(kraemer_pipeline(args.n, args.p, args.u), args)


def _cmd_chart(args) -> int:
    check_parameters(args.n, args.r, args.p, args.u)
    if args.which == "base":
        if args.r == 1:
            pres = kraemer_chart(args.n)
        elif args.r == 2:
            pres = signature2_chart(args.n)
        else:
            pres = general_chart_reduced(args.n, args.r)
    else:
        if args.r != 2:
            raise ParameterError("blow-up charts exist for r = 2 only")
        pres = blowup_chart(args.n, args.which)
    ideal = pres.ideal
    if args.fiber == "special":
        ideal = chart_special_fiber(pres, args.p)
    sys.stdout.write(IdealFile.from_ideal(ideal).dumps())
    return EXIT_OK


def _cmd_gb(args) -> int:
    ideal = IdealFile.read(args.input).to_ideal()
    order = parse_order(args.order) if args.order else None
    basis = ideal.groebner_basis(order)
    sys.stdout.write(IdealFile.from_ideal(ideal, order, basis).dumps())
    return EXIT_OK


def _cmd_check(args) -> int:
    ideal = IdealFile.read(args.input).to_ideal()
    if args.op == "membership":
        if len(args.args) != 1:
            raise ParameterError("membership takes exactly one polynomial argument")
        inside = ideal_membership(ideal.ctx.parse(args.args[0]), ideal)
        print("true" if inside else "false")
        return EXIT_OK if inside else EXIT_FAIL
    if args.op == "dimension":
        print(krull_dimension(ideal))
        return EXIT_OK
    if not args.args:
        raise ParameterError("smooth takes EXPECTED_DIM [VAR ...]")
    try:
        expected = int(args.args[0])
    except ValueError:
        raise ParameterError("expected dimension must be an integer") from None
    variables = args.args[1:] or None
    verdict = smoothness_check(ideal, variables, expected)
    print(f"{verdict.status} dim={verdict.dimension}")
    return EXIT_OK if verdict.smooth else EXIT_FAIL


_COMMANDS = {
    "verify": _cmd_verify,
    "kraemer": _cmd_kraemer,
    "chart": _cmd_chart,
    "gb": _cmd_gb,
    "check": _cmd_check,
}


def run(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        with ExitStack() as stack:
            if not args.no_cache:
                directory = os.environ.get(CACHE_ENV)
                if not directory:
                    directory = stack.enter_context(tempfile.TemporaryDirectory(prefix="lmv-cache-"))
                stack.enter_context(GBCache(directory).activate())
            if args.max_pairs is not None:
                stack.enter_context(max_pairs_limit(args.max_pairs))
            return _COMMANDS[args.command](args)
    except ResourceExhausted as exc:
        print(f"lmv: error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParameterError, FieldError, ContextError, ParseError, IdealFileError, ValueError) as exc:
        print(f"lmv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"lmv: error: {exc.strerror or exc}: {exc.filename or ''}".rstrip(": "), file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
