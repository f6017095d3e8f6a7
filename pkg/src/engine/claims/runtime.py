"""Claim registry and runner."""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from fnmatch import fnmatchcase
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Literal, Optional, Sequence

from pydantic import BaseModel, ConfigDict, model_validator

from ...utils.formatting import dump_json_line, format_exponent
from ..dissection import ScanOutcome
from ..series import Difference
from .checks import CHECKS, CheckContext, CheckResult, Claim, ClaimError

logger = logging.getLogger(__name__)

REGISTRY_PATH = Path(__file__).resolve().with_name("registry.json")

ClaimStatus = Literal["pass", "fail", "error"]
Fidelity = Literal["confirmed", "counterexample"]


class UnknownClaimError(KeyError):
    pass


class OrderChecked(BaseModel):
    model_config = ConfigDict(frozen=True)

    lattice: int
    scale: int


class Witness(BaseModel):
    model_config = ConfigDict(frozen=True)

    exponent: str
    lhs_coefficient: int
    rhs_coefficient: int

    @classmethod
    def from_difference(cls, difference: Difference) -> "Witness":
        return cls(
            exponent=format_exponent(difference.index, difference.scale),
            lhs_coefficient=difference.lhs,
            rhs_coefficient=difference.rhs,
        )


class OutcomeRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    status: Literal["AllZero", "FirstNonzero"]
    n: Optional[int] = None
    coefficient: Optional[int] = None

    @classmethod
    def from_outcome(cls, outcome: ScanOutcome) -> "OutcomeRecord":
        return cls(status=outcome.status, n=outcome.n, coefficient=outcome.coefficient)


class ClaimReport(BaseModel):
    """Outcome of one registry check."""

    model_config = ConfigDict(frozen=True)

    claim_id: str
    status: ClaimStatus
    order_checked: OrderChecked
    witness: Optional[Witness] = None
    runtime_ms: int = 0
    note: Optional[str] = None
    outcome: Optional[OutcomeRecord] = None
    fidelity: Optional[Fidelity] = None

    @model_validator(mode="after")
    def _witness_matches_status(self) -> "ClaimReport":
        if self.status == "fail" and self.witness is None:
            raise ValueError(f"{self.claim_id}: a failing report needs a witness.")
        if self.status != "fail" and self.witness is not None:
            raise ValueError(f"{self.claim_id}: only failing reports carry a witness.")
        return self

    def to_json_line(self) -> str:
        return dump_json_line(self.model_dump(mode="json"))


class RunSummary(BaseModel):
    record: Literal["summary"] = "summary"
    total: int
    passed: int
    failed: int
    errors: int
    confirmations: list[str]
    counterexamples: list[str]

    def to_json_line(self) -> str:
        return dump_json_line(self.model_dump(mode="json"))


def _claim_from_entry(entry: dict) -> Claim:
    expected = entry.get("expected")
    return Claim(
        id=entry["id"],
        kind=entry["kind"],
        description=entry.get("description", ""),
        scale=int(entry.get("scale", 1)),
        order=int(entry["order"]),
        params=dict(entry.get("params", {})),
        secondary=bool(entry.get("secondary", False)),
        expected=ScanOutcome(expected["status"], expected.get("n"), expected.get("coefficient")) if expected else None,
    )


@lru_cache(maxsize=1)
def load_registry() -> tuple[Claim, ...]:
    """Load and cache the claim registry in its canonical order."""
    raw = json.loads(REGISTRY_PATH.read_text(encoding="utf-8"))
    return tuple(_claim_from_entry(entry) for entry in raw)


def registry_index() -> dict[str, int]:
    return {claim.id: position for position, claim in enumerate(load_registry())}


def select_claims(selectors: Iterable[str]) -> list[Claim]:
    """Resolve ids, ``all`` and fnmatch patterns to registry claims, in registry order.

    ``all`` and patterns skip secondary claims; those run only when named exactly.
    """
    registry = load_registry()
    chosen: set[str] = set()
    for selector in selectors:
        if selector == "all":
            chosen.update(claim.id for claim in registry if not claim.secondary)
            continue
        exact = [claim.id for claim in registry if claim.id == selector]
        if exact:
            chosen.update(exact)
            continue
        matched = [claim.id for claim in registry if not claim.secondary and fnmatchcase(claim.id, selector)]
        if not matched:
            raise UnknownClaimError(selector)
        chosen.update(matched)
    return [claim for claim in registry if claim.id in chosen]


def _fidelity(claim: Claim, result: CheckResult) -> Optional[Fidelity]:
    if claim.kind != "scan" or result.outcome is None:
        return None
    return "confirmed" if result.outcome.status == "AllZero" else "counterexample"


def _error_report(claim: Claim, checked: OrderChecked, started: float, timing: bool, note: str) -> ClaimReport:
    elapsed = int((time.perf_counter() - started) * 1000) if timing else 0
    return ClaimReport(
        claim_id=claim.id,
        status="error",
        order_checked=checked,
        runtime_ms=elapsed,
        note=note,
    )


def run_claim(
    claim: Claim,
    *,
    order: Optional[int] = None,
    depth_cap: int,
    seed: int,
    timing: bool = True,
) -> ClaimReport:
    """Run one claim; exceptions from the check become an ``error`` report."""
    ctx = CheckContext(order=claim.order if order is None else order, depth_cap=depth_cap, seed=seed)
    checked = OrderChecked(lattice=ctx.order, scale=claim.scale)
    logger.debug("Checking %s through %s/%s.", claim.id, ctx.order, claim.scale)
    started = time.perf_counter()
    try:
        result = CHECKS[claim.kind](claim, ctx)
    except ClaimError as exc:
        logger.warning("%s cannot be checked: %s", claim.id, exc)
        return _error_report(claim, checked, started, timing, str(exc))
    except Exception as exc:  # noqa: BLE001
        logger.warning("%s raised %s: %s", claim.id, type(exc).__name__, exc)
        return _error_report(claim, checked, started, timing, f"{type(exc).__name__}: {exc}")
    elapsed = int((time.perf_counter() - started) * 1000) if timing else 0
    if not result.passed:
        logger.warning("%s failed (%s).", claim.id, result.note or "mismatch")
    logger.debug("Finished %s in %s ms.", claim.id, elapsed)
    return ClaimReport(
        claim_id=claim.id,
        status="pass" if result.passed else "fail",
        order_checked=checked,
        witness=Witness.from_difference(result.witness) if result.witness else None,
        runtime_ms=elapsed,
        note=None if result.passed else result.note,
        outcome=OutcomeRecord.from_outcome(result.outcome) if result.outcome else None,
        fidelity=_fidelity(claim, result),
    )


def _run_job(args: tuple[Claim, Optional[int], int, int, bool]) -> ClaimReport:
    claim, order, depth_cap, seed, timing = args
    return run_claim(claim, order=order, depth_cap=depth_cap, seed=seed, timing=timing)


def run_claims(
    claims: Sequence[Claim],
    *,
    order: Optional[int] = None,
    depth_cap: int,
    seed: int,
    jobs: int = 1,
    timing: bool = True,
) -> list[ClaimReport]:
    """Run claims, in parallel when ``jobs > 1``; reports come back in registry order."""
    work = [(claim, order, depth_cap, seed, timing) for claim in claims]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_job, work))
    else:
        reports = [_run_job(item) for item in work]
    index = registry_index()
    return sorted(reports, key=lambda report: index.get(report.claim_id, len(index)))


def summarize(reports: Sequence[ClaimReport]) -> RunSummary:
    return RunSummary(
        total=len(reports),
        passed=sum(report.status == "pass" for report in reports),
        failed=sum(report.status == "fail" for report in reports),
        errors=sum(report.status == "error" for report in reports),
        confirmations=[report.claim_id for report in reports if report.fidelity == "confirmed"],
        counterexamples=[report.claim_id for report in reports if report.fidelity == "counterexample"],
    )


__all__ = [
    "ClaimReport",
    "ClaimStatus",
    "OrderChecked",
    "OutcomeRecord",
    "REGISTRY_PATH",
    "RunSummary",
    "UnknownClaimError",
    "Witness",
    "load_registry",
    "registry_index",
    "run_claim",
    "run_claims",
    "select_claims",
    "summarize",
]
