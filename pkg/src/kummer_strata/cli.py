"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 domain error, 3 failed
verification check.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import serialize
from .cone import Strategy, decompose
from .errors import KummerError
from .projective import count_degree_d, count_p1
from .region import CountSample, RegionParams, count_sweep, fit_exponent
from .strata import first_layer_report
from .verify import DEFAULT_SEED, SUITES, run_suite

THREADS_ENV = "KUMMER_STRATA_THREADS"

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer >= 1, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"{THREADS_ENV} must be an integer >= 1, got {raw!r}")
    return n


def _b_list(text: str) -> list:
    items = [t for t in text.replace(" ", "").split(",") if t]
    try:
        values = [int(t) for t in items]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None
    if any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("B values must be positive")
    if any(a >= b for a, b in zip(values, values[1:])):
        raise argparse.ArgumentTypeError("B values must be strictly increasing")
    return values


def _rational(text: str):
    try:
        return serialize.parse_q(text)
    except serialize.DocumentError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def _domain_error(exc: KummerError) -> int:
    _emit_json({"error": exc.code, "detail": str(exc)})
    return EXIT_DOMAIN


def _read_document(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return serialize.parse_document(text)


def cmd_analyze(args) -> int:
    inp, opts = _read_document(args.path)
    strategy = Strategy.parse(args.strategy) if args.strategy else opts["strategy"]
    n = args.field_degree if args.field_degree is not None else opts["field_degree"]
    report = first_layer_report(inp, strategy, n)
    _emit_json(serialize.report_to_json(report))
    return EXIT_OK


def cmd_decompose(args) -> int:
    inp, opts = _read_document(args.path)
    strategy = Strategy.parse(args.strategy) if args.strategy else opts["strategy"]
    out = serialize.decomposition_to_json(decompose(inp, strategy))
    out["strategy"] = strategy.value
    _emit_json(out)
    return EXIT_OK


def cmd_count_region(args) -> int:
    samples = []
    if args.B_list:
        p = RegionParams(args.g1, args.g2, args.c1, args.c2, args.B_list[0])
        samples = count_sweep(p, args.B_list, workers=thread_count())
    else:
        # still validate the parameters
        RegionParams(args.g1, args.g2, args.c1, args.c2, 1)
    sys.stdout.write(serialize.samples_to_csv(samples))
    return EXIT_OK


def cmd_count_p1(args) -> int:
    if args.degree < 1:
        raise UsageError("--degree must be >= 1")
    count = count_p1 if args.degree == 1 else (lambda B: count_degree_d(B, args.degree))
    samples = [CountSample(B, count(B)) for B in args.B_list]
    sys.stdout.write(serialize.samples_to_csv(samples))
    return EXIT_OK


def cmd_fit(args) -> int:
    text = Path(args.input).read_text(encoding="utf-8") if args.input else sys.stdin.read()
    samples = serialize.samples_from_csv(text)
    fit = fit_exponent(samples, args.tail)
    _emit_json(serialize.fit_to_json(fit))
    return EXIT_OK


def cmd_verify(args) -> int:
    failed = 0
    for check in run_suite(args.suite, args.seed):
        print(check.line(), flush=True)
        failed += not check.ok
    print(f"{'all checks passed' if not failed else f'{failed} check(s) failed'}")
    return EXIT_OK if not failed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kummer-strata", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="first-layer report for a divisor document")
    p.add_argument("path")
    p.add_argument("--strategy", choices=[s.value for s in Strategy])
    p.add_argument("--field-degree", type=int, dest="field_degree")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decompose", help="cone decomposition of a divisor document")
    p.add_argument("path")
    p.add_argument("--strategy", choices=[s.value for s in Strategy])
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("count-region", help="lattice-point counts of the plane region, as CSV")
    for name in ("g1", "g2", "c1", "c2"):
        p.add_argument(f"--{name}", type=_rational, required=True)
    p.add_argument("--B-list", type=_b_list, default=[], dest="B_list")
    p.set_defaults(func=cmd_count_region)

    p = sub.add_parser("count-p1", help="points of bounded height on P^1(Q), as CSV")
    p.add_argument("--B-list", type=_b_list, default=[], dest="B_list")
    p.add_argument("--degree", type=int, default=1, help="count on a degree-d rational curve")
    p.set_defaults(func=cmd_count_p1)

    p = sub.add_parser("fit", help="log-log slope of a B,count CSV (stdin by default)")
    p.add_argument("--tail", type=float, default=1.0)
    p.add_argument("--input")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("verify", help="run a self-check suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KummerError as exc:
        return _domain_error(exc)
    except (serialize.DocumentError, UsageError, ValueError, OSError) as exc:
        print(f"kummer-strata: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
