"""Command line interface: ``polarsolve {solve,check,degrees,charts} INPUT``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .circuit import CircuitError
from .polar import MinorSelection, bezout_report, enumerate_charts, polar_system
from .ratpoly import PolyParseError
from .pipeline import (
    HypothesisFailure,
    InputError,
    JobConfig,
    RetryLimitExceeded,
    check_hypotheses,
    emit_report,
    load_input,
    solve,
)

CORPUS = Path(__file__).with_name("corpus")

EXIT_INPUT, EXIT_RETRY, EXIT_HYPOTHESIS = 2, 3, 4

BANNER = ("warning: compactness of the real solution set is not checked; "
          "pass --assert-compact to acknowledge it. Without it, an empty answer "
          "does not prove that no real solution exists.")


def resolve_input(name: str) -> Path:
    """A path, or the stem of a bundled example such as ``torus``."""
    path = Path(name)
    if path.exists():
        return path
    bundled = CORPUS / f"{name}.json"
    if bundled.exists():
        return bundled
    raise InputError(f"no such input file or bundled example: {name}")


def _rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text}") from exc
    if value <= 0:
        raise argparse.ArgumentTypeError("eps must be positive")
    return value


def _chart(text: str) -> MinorSelection:
    try:
        return MinorSelection.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"chart must look like 1,3:2,1 ({exc})") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polarsolve",
                                 description="Real solutions of smooth complete intersections "
                                             "via polar varieties, in exact arithmetic.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", help="input JSON file or bundled example name")

    s = sub.add_parser("solve", help="compute real representative points")
    add_input(s)
    s.add_argument("--coords", choices=["identity", "random"], default="random")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--retry-limit", type=int, default=5)
    s.add_argument("--eps", type=_rational, default=Fraction(1, 1000),
                   help="width of coordinate boxes, as a/b")
    s.add_argument("--chart", type=_chart, default=None,
                   help="solve a single chart, written i1,..,ip:j,k")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--assert-compact", action="store_true")
    s.add_argument("--strict", action="store_true",
                   help="abort when a hypothesis check fails")
    s.add_argument("--format", choices=["json", "text"], default="json")

    for name, text in [("check", "run the hypothesis checks only"),
                       ("degrees", "print the Bezout-type degree bounds"),
                       ("charts", "list the chart systems")]:
        add_input(sub.add_parser(name, help=text))
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        path = resolve_input(args.input)
        if args.command == "solve":
            if not args.assert_compact:
                print(BANNER, file=sys.stderr)
            cfg = JobConfig(input_path=str(path), coords=args.coords, seed=args.seed,
                            retry_limit=args.retry_limit, eps=args.eps, chart_filter=args.chart,
                            output_format=args.format, workers=args.workers,
                            assert_compact=args.assert_compact, strict=args.strict)
            sys.stdout.write(emit_report(solve(cfg), cfg.output_format))
            return 0
        system = load_input(path)
        if args.command == "check":
            out = check_hypotheses(system).as_dict()
        elif args.command == "degrees":
            out = bezout_report(system).as_dict()
        else:
            out = []
            for chart in enumerate_charts(system.n, system.p):
                ps = polar_system(system, chart, system.n - system.p)
                out.append({"chart": str(chart), "flag_preserving": ps.preserves_flag,
                            "equations": [str(f) for f in ps.equations],
                            "localization": str(ps.localization_g)})
        print(json.dumps(out, indent=2))
        return 0
    except (InputError, PolyParseError, CircuitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RetryLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        for line in exc.diagnostics:
            print(f"  {line}", file=sys.stderr)
        return EXIT_RETRY
    except HypothesisFailure as exc:
        print(f"error: hypothesis check failed: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
