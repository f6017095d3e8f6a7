"""Checking procedures, one per claim kind."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping, Optional, Sequence

from ...utils.monomials import parse_monomial, random_monomial, random_theta_pair
from ..cfrac import NAMED_CFS, entry12_cf, entry12_lhs, evaluate_named_cf, lookup_named_cf, stabilize
from ..dissection import (
    DissectionParams,
    ScanOutcome,
    dissection_lhs,
    dissection_terms,
    lookup_quotient,
    quotient_series,
    reduction_sides,
    vanish_scan,
    vanishing_residue,
)
from ..partitions import TABLES, TRIPLES, enumerate_counts, gf_expand
from ..series import Difference, LatticeSeries, add, eq_to_order
from ..theta import (
    HELPER_ARITY,
    SignedMonomial,
    helper_arguments_admissible,
    helper_sides,
    theta_product,
    theta_sum,
)
from .theorems import Sign, lookup_item, theorem3_sides

logger = logging.getLogger(__name__)

MAX_SAMPLE_ATTEMPTS = 1000


class ClaimError(ValueError):
    """A registry claim whose parameters cannot be checked as stated."""


@dataclass(frozen=True)
class Claim:
    id: str
    kind: str
    description: str
    scale: int
    order: int
    params: Mapping[str, Any] = field(default_factory=dict)
    secondary: bool = False
    expected: Optional[ScanOutcome] = None


@dataclass(frozen=True)
class CheckContext:
    """Order (lattice units of the claim's scale), depth cap and sampling seed for one run."""

    order: int
    depth_cap: int
    seed: int

    def rng(self, claim: Claim) -> random.Random:
        return random.Random(f"{self.seed}:{claim.id}")


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    witness: Optional[Difference] = None
    note: Optional[str] = None
    outcome: Optional[ScanOutcome] = None

    @classmethod
    def from_agreement(
        cls,
        lhs: LatticeSeries,
        rhs: LatticeSeries,
        order: int,
        note: Optional[str] = None,
    ) -> "CheckResult":
        agreement = eq_to_order(lhs, rhs, order)
        if agreement:
            return cls(True)
        return cls(False, agreement.witness, note)


Checker = Callable[[Claim, CheckContext], CheckResult]


def _compare_cases(
    cases: Sequence[tuple[str, Callable[[], tuple[LatticeSeries, LatticeSeries]]]],
    order: int,
) -> CheckResult:
    """First failing case wins; its label becomes the note."""
    for label, build in cases:
        lhs, rhs = build()
        result = CheckResult.from_agreement(lhs, rhs, order, note=label)
        if not result.passed:
            return result
    return CheckResult(True)


def _named_theta_args() -> list[tuple[SignedMonomial, SignedMonomial]]:
    pairs = []
    for entry in NAMED_CFS:
        pairs.append(entry.numerator_args)
        pairs.append(entry.denominator_args)
    return pairs


def check_triple(claim: Claim, ctx: CheckContext) -> CheckResult:
    rng = ctx.rng(claim)
    pairs = _named_theta_args()
    pairs.extend(random_theta_pair(rng) for _ in range(int(claim.params.get("samples", 0))))
    scale = claim.scale

    def case(a: SignedMonomial, b: SignedMonomial) -> tuple[str, Callable[[], tuple[LatticeSeries, LatticeSeries]]]:
        return (
            f"f({a}, {b})",
            lambda: (theta_sum(a, b, ctx.order, scale=scale), theta_product(a, b, ctx.order, scale=scale)),
        )

    return _compare_cases([case(a, b) for a, b in pairs], ctx.order)


def _helper_arguments(identity: str, claim: Claim, rng: random.Random) -> list[tuple[SignedMonomial, ...]]:
    argument_sets = [tuple(parse_monomial(text) for text in row) for row in claim.params.get("instances", [])]
    wanted = int(claim.params.get("samples", 0))
    attempts = 0
    while wanted and attempts < MAX_SAMPLE_ATTEMPTS:
        attempts += 1
        args = random_theta_pair(rng, max_exponent=4)
        if helper_arguments_admissible(identity, args):
            argument_sets.append(args)
            wanted -= 1
    if wanted:
        logger.warning("Only drew %s admissible argument sets for %s.", len(argument_sets), identity)
    return argument_sets


def check_helper(claim: Claim, ctx: CheckContext) -> CheckResult:
    identity = str(claim.params["identity"])
    if HELPER_ARITY[identity] == 0:
        argument_sets: list[tuple[SignedMonomial, ...]] = [()]
    else:
        argument_sets = _helper_arguments(identity, claim, ctx.rng(claim))

    def case(args: tuple[SignedMonomial, ...]) -> tuple[str, Callable[[], tuple[LatticeSeries, LatticeSeries]]]:
        label = f"{identity}({', '.join(map(str, args))})" if args else identity
        return label, lambda: helper_sides(identity, args, ctx.order, scale=claim.scale)

    return _compare_cases([case(args) for args in argument_sets], ctx.order)


def check_cf(claim: Claim, ctx: CheckContext) -> CheckResult:
    entry = lookup_named_cf(str(claim.params["name"]))
    stable = evaluate_named_cf(entry, ctx.order, ctx.depth_cap)
    logger.debug("%s stabilized at depth %s.", entry.key, stable.depth)
    quotient = entry.quotient(ctx.order)
    return _compare_cases(
        [
            ("continued fraction", lambda: (stable.value, quotient)),
            ("product side", lambda: (entry.product_form(ctx.order), quotient)),
        ],
        ctx.order,
    )


def check_entry12(claim: Claim, ctx: CheckContext) -> CheckResult:
    rng = ctx.rng(claim)
    qpow = Fraction(str(claim.params.get("qpow", "1")))
    scale = claim.scale

    def draw() -> SignedMonomial:
        return random_monomial(rng, denominators=(scale,), max_exponent=2)

    def case(a: SignedMonomial, b: SignedMonomial) -> tuple[str, Callable[[], tuple[LatticeSeries, LatticeSeries]]]:
        def build() -> tuple[LatticeSeries, LatticeSeries]:
            spec = entry12_cf(a, b, qpow, order=ctx.order, scale=scale)
            value = stabilize(spec, ctx.order, ctx.depth_cap).value
            return value, entry12_lhs(a, b, qpow, order=ctx.order, scale=scale)

        return f"a={a}, b={b}", build

    samples = int(claim.params.get("samples", 0))
    return _compare_cases([case(draw(), draw()) for _ in range(samples)], ctx.order)


def check_dissection(claim: Claim, ctx: CheckContext) -> CheckResult:
    params = DissectionParams(**{key: int(claim.params[key]) for key in ("t", "s", "r", "p")})
    if vanishing_residue(params) is None:
        raise ClaimError(f"No term of the {params.p}-dissection carries the (1 - 1) factor.")
    lhs = dissection_lhs(params, ctx.order)
    rhs = LatticeSeries.zero(1, ctx.order)
    for term in dissection_terms(params, ctx.order):
        rhs = add(rhs, term)
    return CheckResult.from_agreement(lhs, rhs, ctx.order)


def check_reduction(claim: Claim, ctx: CheckContext) -> CheckResult:
    lhs, rhs = reduction_sides(
        str(claim.params["theorem"]),
        ctx.order,
        denominator_power=int(claim.params.get("denominator_power", 4)),
    )
    return CheckResult.from_agreement(lhs, rhs, ctx.order)


def _expected_within(expected: Optional[ScanOutcome], order: int) -> ScanOutcome:
    """A recorded first nonzero beyond the scanned order reads as all zero."""
    if expected is None or expected.status == "AllZero":
        return ScanOutcome.all_zero()
    if expected.n is not None and expected.n > order:
        return ScanOutcome.all_zero()
    return expected


def check_scan(claim: Claim, ctx: CheckContext) -> CheckResult:
    quotient = lookup_quotient(str(claim.params["quotient"]))
    series = quotient_series(quotient, ctx.order)
    outcome = vanish_scan(series, quotient.residue, quotient.progression, ctx.order)
    expected = _expected_within(claim.expected, ctx.order)
    if outcome == expected:
        return CheckResult(True, outcome=outcome)
    n = min(value for value in (outcome.n, expected.n) if value is not None)
    recorded = expected.coefficient if expected.n == n else 0
    witness = Difference(n, 1, series.at(n), recorded or 0)
    note = f"scan gave {outcome.status}, recorded {expected.status}"
    return CheckResult(False, witness, note, outcome)


def check_theta(claim: Claim, ctx: CheckContext) -> CheckResult:
    item = lookup_item(claim.id)

    def case(sign: Sign) -> tuple[str, Callable[[], tuple[LatticeSeries, LatticeSeries]]]:
        return f"{sign} sign", lambda: theorem3_sides(item.claim_id, sign, ctx.order)

    return _compare_cases([case(sign) for sign in item.signs], ctx.order)


def check_partition(claim: Claim, ctx: CheckContext) -> CheckResult:
    triple = TRIPLES[str(claim.params["triple"])]
    first, second, third = (gf_expand(spec, ctx.order) for spec in triple.specs)
    for n in range(ctx.order + 1):
        lagged = second.at(n - triple.shift) if n >= triple.shift else 0
        if first.at(n) != lagged + third.at(n):
            return CheckResult(False, Difference(n, 1, first.at(n), lagged + third.at(n)), "theorem residual")
    for spec, series in zip(triple.specs, (first, second, third)):
        counts = enumerate_counts(spec, ctx.order)
        for n, count in enumerate(counts):
            if series.at(n) != count:
                return CheckResult(False, Difference(n, 1, series.at(n), count), f"{spec.name} enumeration")
        if spec.name in TABLES:
            n, expected = TABLES[spec.name]
            if n <= ctx.order and counts[n] != expected:
                return CheckResult(False, Difference(n, 1, counts[n], expected), f"{spec.name} table")
    return CheckResult(True)


CHECKS: dict[str, Checker] = {
    "triple": check_triple,
    "helper": check_helper,
    "cf": check_cf,
    "entry12": check_entry12,
    "dissection": check_dissection,
    "reduction": check_reduction,
    "scan": check_scan,
    "theta": check_theta,
    "partition": check_partition,
}


__all__ = [
    "CHECKS",
    "CheckContext",
    "CheckResult",
    "Checker",
    "Claim",
    "ClaimError",
    "check_cf",
    "check_dissection",
    "check_entry12",
    "check_helper",
    "check_partition",
    "check_reduction",
    "check_scan",
    "check_theta",
    "check_triple",
]
