from __future__ import annotations

import json

import pytest
from pydantic import ValidationError

from src.engine.claims import (
    CHECKS,
    THEOREM3_ITEMS,
    Claim,
    ClaimReport,
    OrderChecked,
    UnknownClaimError,
    load_registry,
    run_claim,
    run_claims,
    select_claims,
    summarize,
)
from src.engine.dissection import QUOTIENTS, ScanOutcome


def scan_claim(expected: ScanOutcome, order: int = 40) -> Claim:
    return Claim(
        id="T21.i",
        kind="scan",
        description="",
        scale=1,
        order=order,
        params={"quotient": "T21.a"},
        expected=expected,
    )


def test_registry_is_consistent() -> None:
    registry = load_registry()
    ids = [claim.id for claim in registry]
    assert len(ids) == 72
    assert len(set(ids)) == len(ids)
    assert {claim.kind for claim in registry} <= set(CHECKS)
    for claim in registry:
        if claim.kind == "scan":
            assert claim.expected is not None
            assert claim.params["quotient"] in QUOTIENTS
        if claim.kind == "theta":
            assert claim.id in THEOREM3_ITEMS


def test_select_all_skips_secondary_claims() -> None:
    chosen = select_claims(["all"])
    assert len(chosen) == 68
    assert not any(claim.secondary for claim in chosen)


@pytest.mark.parametrize(("pattern", "count"), [("CF.*", 18), ("T3?.*", 19), ("DISS.*", 3), ("RED.*", 3)])
def test_select_patterns(pattern: str, count: int) -> None:
    assert len(select_claims([pattern])) == count


def test_select_keeps_registry_order() -> None:
    assert [claim.id for claim in select_claims(["T35", "TRIPLE", "T35"])] == ["TRIPLE", "T35"]


def test_secondary_claims_run_only_by_exact_id() -> None:
    assert [claim.id for claim in select_claims(["T32.iii-printed"])] == ["T32.iii-printed"]
    with pytest.raises(UnknownClaimError):
        select_claims(["*-printed"])
    with pytest.raises(UnknownClaimError):
        select_claims(["nosuch"])


def test_scan_counterexample_passes_when_recorded() -> None:
    report = run_claim(scan_claim(ScanOutcome("FirstNonzero", 17, -1)), depth_cap=64, seed=1, timing=False)
    assert report.status == "pass"
    assert report.fidelity == "counterexample"
    assert report.outcome is not None and report.outcome.n == 17
    assert report.runtime_ms == 0


def test_scan_mismatch_fails_with_witness() -> None:
    report = run_claim(scan_claim(ScanOutcome.all_zero()), depth_cap=64, seed=1)
    assert report.status == "fail"
    assert report.witness is not None
    assert (report.witness.exponent, report.witness.lhs_coefficient, report.witness.rhs_coefficient) == ("17", -1, 0)
    assert report.note == "scan gave FirstNonzero, recorded AllZero"


def test_recorded_coefficient_beyond_order_reads_as_zero() -> None:
    report = run_claim(scan_claim(ScanOutcome("FirstNonzero", 17, -1), order=10), depth_cap=64, seed=1)
    assert report.status == "pass"
    assert report.fidelity == "confirmed"


def test_check_exceptions_become_error_reports(monkeypatch: pytest.MonkeyPatch) -> None:
    def boom(claim: Claim, ctx: object) -> None:
        raise ArithmeticError("overflowed")

    monkeypatch.setitem(CHECKS, "scan", boom)
    report = run_claim(scan_claim(ScanOutcome.all_zero()), depth_cap=64, seed=1)
    assert report.status == "error"
    assert report.witness is None
    assert report.note == "ArithmeticError: overflowed"


def test_dissection_without_vanishing_term_is_an_error() -> None:
    claim = Claim("DISS.10", "dissection", "", 1, 20, {"t": 10, "s": 3, "r": 3, "p": 5})
    report = run_claim(claim, depth_cap=64, seed=1)
    assert report.status == "error"
    assert report.witness is None
    assert report.note == "No term of the 5-dissection carries the (1 - 1) factor."


def test_order_override() -> None:
    claim = select_claims(["T36"])[0]
    report = run_claim(claim, order=40, depth_cap=64, seed=1)
    assert report.order_checked == OrderChecked(lattice=40, scale=1)


def test_failing_reports_need_witnesses() -> None:
    with pytest.raises(ValidationError):
        ClaimReport(claim_id="X", status="fail", order_checked=OrderChecked(lattice=1, scale=1))


def test_report_json_line_is_canonical() -> None:
    report = run_claim(scan_claim(ScanOutcome.all_zero()), depth_cap=64, seed=1, timing=False)
    line = report.to_json_line()
    payload = json.loads(line)
    assert list(payload) == sorted(payload)
    assert '":' in line and '": ' not in line
    assert ClaimReport.model_validate(payload) == report


def test_printed_reduction_fails() -> None:
    report = run_claim(select_claims(["RED.T21-printed"])[0], order=60, depth_cap=64, seed=1)
    assert report.status == "fail"
    assert report.witness is not None


def test_parallel_run_matches_serial() -> None:
    claims = select_claims(["T35", "DISS.18", "RED.T21", "T21.*"])
    serial = run_claims(claims, order=60, depth_cap=64, seed=3, timing=False)
    parallel = run_claims(list(reversed(claims)), order=60, depth_cap=64, seed=3, jobs=2, timing=False)
    assert serial == parallel
    assert [report.claim_id for report in serial] == [claim.id for claim in claims]


def test_summarize_lists_scan_fidelity() -> None:
    reports = run_claims(select_claims(["T21.*"]), order=60, depth_cap=64, seed=1, timing=False)
    summary = summarize(reports)
    assert (summary.total, summary.passed, summary.failed, summary.errors) == (3, 3, 0, 0)
    assert summary.confirmations == ["T21.ii"]
    assert summary.counterexamples == ["T21.i", "T21.iii"]
    assert json.loads(summary.to_json_line())["record"] == "summary"
