"""``qid`` command line: expand named series and check registry claims."""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from math import lcm
from typing import Callable, Optional, Sequence

from ..config import Settings, get_settings
from ..engine.cfrac import RESULT_SCALE, UnknownContinuedFractionError, lookup_named_cf
from ..engine.claims import (
    ClaimReport,
    UnknownClaimError,
    load_registry,
    run_claims,
    select_claims,
    summarize,
)
from ..engine.dissection import QUOTIENTS, quotient_series
from ..engine.partitions import PART_SPECS, gf_expand
from ..engine.series import LatticeSeries
from ..engine.theta import ThetaArgumentError, chi, f_minus, phi, psi, theta_sum
from ..utils.formatting import dump_json_line, format_series_text, format_table, series_record
from ..utils.monomials import MonomialParseError, parse_theta_pair

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

INTEGER_ORDER = 200
HALF_ORDER = 60

THETA_PREFIX = "theta:"

SIMPLE_SERIES: dict[str, Callable[[int], LatticeSeries]] = {
    "phi": lambda order: phi(1, 1, order),
    "psi": lambda order: psi(1, order),
    "fminus": lambda order: f_minus(1, order),
    "chi": lambda order: chi(1, order),
}


class UnknownExpressionError(KeyError):
    pass


def _theta_expression(text: str, order: Optional[int]) -> LatticeSeries:
    a, b = parse_theta_pair(text)
    scale = lcm(a.exponent.denominator, b.exponent.denominator)
    return theta_sum(a, b, INTEGER_ORDER * scale if order is None else order, scale=scale)


def resolve_expression(name: str, order: Optional[int]) -> LatticeSeries:
    """Series for an ``expand`` name; ``order`` is in lattice units of the result."""
    if name in SIMPLE_SERIES:
        return SIMPLE_SERIES[name](INTEGER_ORDER if order is None else order)
    if name in QUOTIENTS:
        return quotient_series(name, INTEGER_ORDER if order is None else order)
    if name in PART_SPECS:
        return gf_expand(PART_SPECS[name], INTEGER_ORDER if order is None else order)
    if name.startswith(THETA_PREFIX):
        return _theta_expression(name[len(THETA_PREFIX):], order)
    try:
        entry = lookup_named_cf(name)
    except UnknownContinuedFractionError as exc:
        raise UnknownExpressionError(name) from exc
    return entry.quotient(HALF_ORDER if order is None else order, scale=RESULT_SCALE)


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="qid",
        description="Expand q-series and verify the identity registry with exact arithmetic.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Log INFO (-v) or DEBUG (-vv).")
    commands = parser.add_subparsers(dest="command", required=True)

    expand = commands.add_parser("expand", help="Print the expansion of a named series.")
    expand.add_argument("name", help="phi, psi, fminus, chi, A1..C7, T21.a.., T35.X1.. or theta:<a>,<b>")
    expand.add_argument("--order", type=_non_negative, help="Truncation in lattice units.")
    expand.add_argument("--format", choices=("text", "json"), dest="output_format")

    check = commands.add_parser("check", help="Run registry claims.")
    check.add_argument("claims", nargs="*", default=["all"], help="Claim ids, fnmatch patterns or 'all'.")
    check.add_argument("--order", type=_non_negative, help="Override every claim's order (lattice units).")
    check.add_argument("--depth-cap", type=_positive, dest="depth_cap")
    check.add_argument("--jobs", type=_positive)
    check.add_argument("--format", choices=("text", "json"), dest="output_format")
    check.add_argument("--no-timing", action="store_true", help="Report runtime_ms as 0.")
    check.add_argument("--list", action="store_true", dest="list_claims", help="List the registry and exit.")
    return parser.parse_args(argv)


def _configure_logging(settings: Settings, verbose: int) -> None:
    level = {0: settings.log_level, 1: "INFO"}.get(verbose, "DEBUG")
    logging.basicConfig(
        level=getattr(logging, level),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def cmd_expand(args: argparse.Namespace, settings: Settings) -> int:
    order = args.order if args.order is not None else settings.default_order
    try:
        series = resolve_expression(args.name, order)
    except (UnknownExpressionError, MonomialParseError, ThetaArgumentError) as exc:
        print(f"qid: unknown expression {args.name!r} ({exc})", file=sys.stderr)
        return EXIT_USAGE
    output_format = args.output_format or settings.output_format
    if output_format == "json":
        print(dump_json_line({"name": args.name, **series_record(series)}))
    else:
        print(format_series_text(series))
    return EXIT_OK


def _report_rows(reports: Sequence[ClaimReport]) -> list[list[str]]:
    rows = []
    for report in reports:
        witness = report.witness
        detail = (
            f"q^{witness.exponent}: {witness.lhs_coefficient} != {witness.rhs_coefficient}" if witness else ""
        )
        rows.append(
            [
                report.claim_id,
                report.status,
                f"{Fraction(report.order_checked.lattice, report.order_checked.scale)}",
                str(report.runtime_ms),
                report.fidelity or "",
                " ".join(part for part in (detail, report.note or "") if part),
            ]
        )
    return rows


def render_reports(reports: Sequence[ClaimReport], output_format: str) -> str:
    summary = summarize(reports)
    if output_format == "json":
        lines = [report.to_json_line() for report in reports]
        lines.append(summary.to_json_line())
        return "\n".join(lines)
    table = format_table(("claim", "status", "order", "ms", "fidelity", "detail"), _report_rows(reports))
    footer = (
        f"{summary.passed}/{summary.total} passed, {summary.failed} failed, {summary.errors} errors; "
        f"confirmed {len(summary.confirmations)}, counterexamples {len(summary.counterexamples)}"
    )
    return f"{table}\n{footer}"


def cmd_check(args: argparse.Namespace, settings: Settings) -> int:
    if args.list_claims:
        rows = [
            [claim.id, claim.kind, str(claim.order), str(claim.scale), claim.description]
            for claim in load_registry()
        ]
        print(format_table(("claim", "kind", "order", "scale", "description"), rows))
        return EXIT_OK
    try:
        claims = select_claims(args.claims)
    except UnknownClaimError as exc:
        print(f"qid: unknown claim {exc.args[0]!r}", file=sys.stderr)
        return EXIT_USAGE
    reports = run_claims(
        claims,
        order=args.order if args.order is not None else settings.default_order,
        depth_cap=args.depth_cap or settings.depth_cap,
        seed=settings.seed,
        jobs=args.jobs or settings.jobs,
        timing=not args.no_timing,
    )
    print(render_reports(reports, args.output_format or settings.output_format))
    report_path = settings.report_path_obj
    if report_path is not None:
        report_path.parent.mkdir(parents=True, exist_ok=True)
        report_path.write_text(render_reports(reports, "json") + "\n", encoding="utf-8")
        logger.info("Wrote report to %s.", report_path)
    return EXIT_OK if all(report.status == "pass" for report in reports) else EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parse_args(argv)
    try:
        settings = get_settings()
    except RuntimeError as exc:
        print(f"qid: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _configure_logging(settings, args.verbose)
    if args.command == "expand":
        return cmd_expand(args, settings)
    return cmd_check(args, settings)


if __name__ == "__main__":
    raise SystemExit(main())
