"""Command-line front end.

Exit codes: 0 property holds / command succeeded, 1 property violated or
verdict mismatch, 2 usage error, 3 internal checker disagreement.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from acccheck.harness import (
    BUNDLED_SCENARIOS, TRACE_COLUMNS, Trace, check_scenario, load_scenario, reproduce_table2, run_scenario,
)
from acccheck.ltl import Not, ParseError, Verdict, to_buchi, to_never_claim
from acccheck.patterns import build_acc_stability, catalog, property_from_text

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
CT_PROPERTIES = {"stability": build_acc_stability}


def verdict_exit_code(verdict: Verdict) -> int:
    if verdict.internal_error:
        return EXIT_INTERNAL
    return EXIT_OK if verdict.holds else EXIT_VIOLATED


def _add_property_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ct", choices=sorted(CT_PROPERTIES),
                   help="control-theory property to check (stability: eventually always beyond the safe gap band)")
    p.add_argument("--formula", help='LTL formula, e.g. "F G ss"')
    p.add_argument("--atom", action="append", default=[], metavar="DEF",
                   help='predicate binding, e.g. "ss = abs(d_rel - d_safe) <= 0.05 * d_safe"; repeatable')
    p.add_argument("--never-claim", action="store_true",
                   help="also print the never claim (automaton of the negated formula)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="acccheck", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a scenario and write its trace CSV")
    p.add_argument("--scenario", required=True, help=f"bundled name ({', '.join(BUNDLED_SCENARIOS)}) or JSON path")
    p.add_argument("--out", required=True, type=Path, help="trace CSV to write")

    p = sub.add_parser("check", help="check a property on a recorded trace CSV")
    p.add_argument("--trace", required=True, type=Path)
    _add_property_args(p)

    p = sub.add_parser("verify", help="simulate a scenario and check a property on it")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", type=Path, help="also write the simulated trace CSV here")
    _add_property_args(p)

    p = sub.add_parser("report", help="reproduce the three-case verdict table")
    p.add_argument("--out", type=Path, help="directory for table2.csv, per-case traces and figures")
    p.add_argument("--workers", type=int, default=1, help="parallel scenario runs")

    p = sub.add_parser("catalog", help="list supported specification patterns")
    p.add_argument("action", nargs="?", choices=["list"], default="list")

    p = sub.add_parser("plot", help="render trace columns over time as SVG")
    p.add_argument("--trace", required=True, type=Path)
    p.add_argument("--columns", required=True, help="comma separated, e.g. v_ego,v_lead,d_rel,d_safe")
    p.add_argument("--out", required=True, type=Path)
    return parser


def _resolve_property(parser: argparse.ArgumentParser, args: argparse.Namespace):
    if args.ct and (args.formula or args.atom):
        parser.error("--ct cannot be combined with --formula/--atom")
    if args.ct:
        return CT_PROPERTIES[args.ct]()
    if not args.formula:
        parser.error("one of --ct or --formula is required")
    try:
        return property_from_text(args.formula, args.atom)
    except ParseError as exc:
        parser.error(str(exc))


def _report_verdict(verdict: Verdict, spec, never_claim: bool) -> int:
    print(f"property: {spec.formula}")
    for pred in spec.atoms.values():
        print(f"  atom {pred}")
    print(verdict.summary())
    if never_claim:
        print(to_never_claim(to_buchi(Not(spec.formula))), end="")
    return verdict_exit_code(verdict)


def _load_scenario(parser: argparse.ArgumentParser, name: str):
    try:
        return load_scenario(name)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        parser.error(f"cannot load scenario {name!r}: {exc}")


def _load_trace(parser: argparse.ArgumentParser, path: Path) -> Trace:
    try:
        return Trace.read_csv(path)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        parser.error(f"cannot read trace {path}: {exc}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "simulate":
        cfg = _load_scenario(parser, args.scenario)
        trace = run_scenario(cfg)
        trace.write_csv(args.out)
        note = f", collision at t={trace.collision:.2f} s" if trace.collision is not None else ""
        print(f"{cfg.id}: {len(trace)} samples written to {args.out}{note}")
        return EXIT_OK

    if args.command == "check":
        spec = _resolve_property(parser, args)
        trace = _load_trace(parser, args.trace)
        try:
            verdict = check_scenario(trace, spec)
        except KeyError as exc:
            parser.error(str(exc))
        return _report_verdict(verdict, spec, args.never_claim)

    if args.command == "verify":
        spec = _resolve_property(parser, args)
        cfg = _load_scenario(parser, args.scenario)
        trace = run_scenario(cfg)
        if args.out:
            trace.write_csv(args.out)
        try:
            verdict = check_scenario(trace, spec)
        except KeyError as exc:
            parser.error(str(exc))
        print(f"scenario: {cfg.id} ({cfg.description})")
        return _report_verdict(verdict, spec, args.never_claim)

    if args.command == "report":
        report = reproduce_table2(max_workers=args.workers)
        print(report.format_table())
        if args.out:
            from acccheck.plotting import plot_report

            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / "table2.csv").write_text(report.to_csv())
            for case in report.cases:
                case.trace.write_csv(args.out / f"{case.id}.csv")
            figures = plot_report(report, args.out)
            print(f"wrote table2.csv, {len(report.cases)} traces and {len(figures)} figures to {args.out}")
        return EXIT_OK if report.all_match else EXIT_VIOLATED

    if args.command == "catalog":
        rows = catalog()
        width = max(len(r.scope) for r in rows)
        print(f"{'scope':<{width}}  {'pattern':<13} template")
        for r in rows:
            print(f"{r.scope:<{width}}  {r.pattern:<13} {r.template}")
        return EXIT_OK

    if args.command == "plot":
        from acccheck.plotting import plot_trace

        columns = [c.strip() for c in args.columns.split(",") if c.strip()]
        bad = [c for c in columns if c not in TRACE_COLUMNS or c == "t"]
        if bad or not columns:
            parser.error(f"unknown columns {bad}; choose from {', '.join(TRACE_COLUMNS[1:])}")
        trace = _load_trace(parser, args.trace)
        plot_trace(trace, columns, args.out)
        print(f"wrote {args.out}")
        return EXIT_OK

    parser.error(f"unknown command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
