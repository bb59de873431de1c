"""Command-line entry point: ``cubic48 {verify,table,valuation,search,bennett,heights}``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .report import Report
from .verify import (
    DEFAULT_VALUATION_MAX_N,
    SearchConfig,
    emit_table,
    run_heights,
    run_searches,
    run_valuation_check,
    verify_theorem,
)

FORMATS = ("text", "json", "csv")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=FORMATS, default=d("text"))
    parser.add_argument("--out", type=Path, default=d(None), help="write output here instead of stdout")
    parser.add_argument("--workers", type=_positive, default=d(1), help="processes for search fan-out")
    parser.add_argument("--no-timing", action="store_true", default=d(False),
                        help="omit timestamps and timings so reports are byte-for-byte reproducible")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubic48", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        _global_options(p, suppress=True)
        return p

    p = command("verify", help="run the full elimination pipeline")
    p.add_argument("--max-n", type=_positive, default=DEFAULT_VALUATION_MAX_N)
    p.add_argument("--cubic-bound", type=_positive, default=SearchConfig.cubic_bound)
    p.add_argument("--max-b", type=int, default=SearchConfig.max_b)

    command("table", help="print x([N]G), alpha, beta and the verdict for every case")

    p = command("valuation", help="check |x([n]G)|_3 = 3^(2 v3(n)) for n <= K")
    p.add_argument("--max-n", type=_positive, default=DEFAULT_VALUATION_MAX_N)

    p = command("search", help="run one brute-force oracle")
    p.add_argument("system", choices=("br", "new", "relative", "cubic"))
    p.add_argument("--bound", type=_positive, default=None,
                   help="coordinate bound (default 500 for br/relative, 10000 for new/cubic)")
    p.add_argument("--max-exp", type=_positive, default=SearchConfig.max_exp)
    p.add_argument("--max-b", type=int, default=SearchConfig.max_b)
    p.add_argument("--allow-equal", action="store_true", help="br only: also scan a = b")

    p = command("bennett", help="scan the Bennett lower bound near the real cube root")
    p.add_argument("--bound", type=_positive, default=SearchConfig.bennett_bound)

    p = command("heights", help="certified height bounds for hhat(G)")
    p.add_argument("--max-n", type=_positive, default=25)
    return parser


def run(args: argparse.Namespace) -> tuple[str, int]:
    timing = not args.no_timing
    if args.command == "table":
        return emit_table(args.format), 0

    report: Report
    if args.command == "verify":
        config = SearchConfig(cubic_bound=args.cubic_bound, max_b=args.max_b, workers=args.workers)
        report = verify_theorem(args.max_n, config, timing=timing)
    elif args.command == "valuation":
        report = run_valuation_check(args.max_n, Report({"max_n": args.max_n}, timing=timing))
        report.stamp()
    elif args.command == "heights":
        report = run_heights(args.max_n, Report({"max_n": args.max_n}, timing=timing))
        report.stamp()
    elif args.command == "bennett":
        config = SearchConfig(bennett_bound=args.bound, workers=args.workers)
        report = run_searches(config, ("bennett",), timing=timing)
    else:
        config = SearchConfig(max_exp=args.max_exp, max_b=args.max_b, workers=args.workers)
        if args.system in ("br", "relative") and args.bound is not None:
            config.bound = args.bound
        if args.system in ("new", "cubic") and args.bound is not None:
            config.cubic_bound = args.bound
        report = run_searches(config, (args.system,), allow_equal=args.allow_equal, timing=timing)
    return report.render(args.format), report.exit_code


def main(argv: list[str] | None = None) -> int:
    # coordinates of large multiples run past the default 4300-digit str limit
    sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = run(args)
    except ValueError as exc:
        parser.error(str(exc))  # exits with status 2
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
