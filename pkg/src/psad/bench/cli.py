"""``psad-bench``: benchmark gradients and Hessians over the problem catalog."""
from __future__ import annotations

import argparse
import logging
import os
import sys

from ..problems import problem_names
from .harness import (DEFAULT_SIZES, METHOD_CHOICES, MIN_TRIALS, MODE_CHOICES,
                      environment, run_bench)
from .report import FORMATS, emit, summarize_all

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 0, 2, 3, 4


def _int_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive integers")
    return values


def _name_list(text):
    return [v.strip() for v in text.split(",") if v.strip()]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="psad-bench",
        description="Measure gradient and Hessian cost ratios (kappa1, kappa2) "
                    "on the partially separable problem catalog.")
    parser.add_argument("--problems", type=_name_list,
                        help="comma-separated problem names (default: all); "
                             f"available: {', '.join(problem_names())}")
    parser.add_argument("--sizes", type=_int_list, default=list(DEFAULT_SIZES),
                        help="comma-separated variable counts (default: 250,1000,4000)")
    parser.add_argument("--trials", type=int, default=5,
                        help=f"timing trials per measurement, at least {MIN_TRIALS} (default: 5)")
    parser.add_argument("--mode", choices=MODE_CHOICES, default="exact",
                        help="Hessian-vector products: exact or gradient differences")
    parser.add_argument("--method", choices=METHOD_CHOICES, default="both",
                        help="Hessian recovery method")
    parser.add_argument("--format", choices=FORMATS, default="table", dest="fmt")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for pattern detection (default: $PSAD_SEED or 0)")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--serial", action="store_true",
                        help="run every problem in this process")
    parser.add_argument("--ops-only", action="store_true",
                        help="report operation counts only; skip wall-clock timing")
    parser.add_argument("--plots", action="store_true",
                        help="also write PNG figures beside --out (or in the current directory)")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def _seed(args, parser):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PSAD_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        parser.error(f"PSAD_SEED must be an integer, got {env!r}")


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        seed = _seed(args, parser)
    except SystemExit:
        return EXIT_USAGE

    unknown = [p for p in (args.problems or []) if p not in problem_names()]
    if unknown:
        print(f"psad-bench: unknown problem(s): {', '.join(unknown)}", file=sys.stderr)
        return EXIT_USAGE
    if args.trials < MIN_TRIALS:
        print(f"psad-bench: --trials must be at least {MIN_TRIALS}", file=sys.stderr)
        return EXIT_USAGE

    records, failures = run_bench(args.problems, args.sizes, args.trials, args.mode,
                                  args.method, seed, args.ops_only, args.serial)
    summaries = summarize_all(records) if records else {}
    errors = [str(f) for f in failures]
    try:
        emit(records, summaries, args.fmt, args.out, environment(), errors)
        if args.plots and records:
            from .plots import write_plots
            write_plots(records, args.out or "psad-bench")
    except OSError as exc:
        print(f"psad-bench: cannot write report: {exc}", file=sys.stderr)
        return EXIT_IO

    if failures:
        for msg in errors:
            print(f"psad-bench: numerical failure in {msg}", file=sys.stderr)
        if args.fmt != "json":
            # partial results always reach JSON, whatever the chosen format
            target = (args.out + ".partial.json") if args.out else None
            try:
                emit(records, summaries, "json", target, environment(), errors,
                     stream=sys.stderr)
            except OSError:
                return EXIT_IO
        return EXIT_NUMERIC
    return EXIT_OK


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
