"""``weyl-lab`` command line: run verification suites and write reports."""
from __future__ import annotations

import argparse
import sys

from .suites import SUITES, ConfigError, SuiteConfig, emit_report, run_suite


def _tolerance(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance {value!r} is not a number") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weyl-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=_tolerance, action="append", default=[], metavar="CHECK=VALUE",
                   help="override the tolerance of one check (repeatable)")
    v.add_argument("--points", metavar="FILE", help="CSV of phase points used by the positivity checks")
    v.add_argument("--measures", metavar="FILE", help="JSON atomic measure added to the measure checks")
    v.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    v.add_argument("--format", choices=("json", "csv-summary"), default="json")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = SuiteConfig(args.suite, args.seed, dict(args.tol), args.points, args.measures,
                         args.out, args.format)
    try:
        reports = run_suite(config)
    except ConfigError as exc:
        print(f"weyl-lab: input error: {exc}", file=sys.stderr)
        return 1
    text = emit_report(reports, config.format, config.out)
    if config.out is None:
        sys.stdout.write(text)
    for rep in reports:
        failed = [r.check_id for r in rep.records if r.verdict != "pass"]
        status = "pass" if not failed else "FAIL: " + ", ".join(failed)
        print(f"[{rep.suite}] {len(rep.records)} checks, {status}", file=sys.stderr)
    return 0 if all(r.overall == "pass" for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
