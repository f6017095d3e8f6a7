"""Claim registry, checking procedures and runner."""

from .checks import CHECKS, CheckContext, CheckResult, Claim, ClaimError
from .runtime import (
    ClaimReport,
    OrderChecked,
    OutcomeRecord,
    RunSummary,
    UnknownClaimError,
    Witness,
    load_registry,
    registry_index,
    run_claim,
    run_claims,
    select_claims,
    summarize,
)
from .theorems import SIGNS, THEOREM3_ITEMS, Theorem3Item, theorem3_residual, theorem3_sides

__all__ = [
    "CHECKS",
    "CheckContext",
    "CheckResult",
    "Claim",
    "ClaimError",
    "ClaimReport",
    "OrderChecked",
    "OutcomeRecord",
    "RunSummary",
    "SIGNS",
    "THEOREM3_ITEMS",
    "Theorem3Item",
    "UnknownClaimError",
    "Witness",
    "load_registry",
    "registry_index",
    "run_claim",
    "run_claims",
    "select_claims",
    "summarize",
    "theorem3_residual",
    "theorem3_sides",
]
