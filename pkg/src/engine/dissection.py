"""p-dissections of theta quotients and vanishing-coefficient scans along progressions."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from typing import Literal, Optional

from .series import (
    LatticeSeries,
    SeriesError,
    extract_progression,
    mul,
    shift,
    sub,
)
from .theta import PochhammerSpec, pochhammer_quotient

logger = logging.getLogger(__name__)


class DissectionError(ValueError):
    """Invalid dissection parameters or unknown quotient/theorem tags."""


class UnknownQuotientError(KeyError):
    pass


@dataclass(frozen=True)
class DissectionParams:
    t: int
    s: int
    r: int
    p: int

    def __post_init__(self) -> None:
        if min(self.t, self.s, self.r, self.p) <= 0:
            raise DissectionError("Dissection parameters must be positive integers.")
        if not 0 < self.s < self.t:
            raise DissectionError(f"Need 0 < s < t, got s={self.s}, t={self.t}.")
        if not 0 < self.r < self.t:
            raise DissectionError(f"Need 0 < r < t, got r={self.r}, t={self.t}.")
        if gcd(self.r, self.p) != 1:
            raise DissectionError(f"Need gcd(r, p) = 1, got r={self.r}, p={self.p}.")


@dataclass(frozen=True)
class DissectionTerm:
    """``q^prefactor * (q^numerator; q^modulus) / (q^denominator; q^modulus)`` for one j."""

    j: Optional[int]
    prefactor: int
    numerator: tuple[int, ...]
    denominator: tuple[int, ...]
    modulus: int

    @property
    def vanishes(self) -> bool:
        """A ``q^0`` start in the numerator means a factor ``(1 - 1)``."""
        return any(start <= 0 and start % self.modulus == 0 for start in self.numerator)

    def series(self, order: int) -> LatticeSeries:
        window = order - self.prefactor
        quotient = _quotient(self.numerator, self.denominator, self.modulus, window)
        return shift(quotient, self.prefactor)


def _quotient(numerator: tuple[int, ...], denominator: tuple[int, ...], modulus: int, order: int) -> LatticeSeries:
    return pochhammer_quotient(
        [PochhammerSpec(start, modulus) for start in numerator],
        [PochhammerSpec(start, modulus) for start in denominator],
        1,
        order,
    )


def dissection_lhs_factors(params: DissectionParams) -> DissectionTerm:
    t, s, r = params.t, params.s, params.r
    return DissectionTerm(
        j=None,
        prefactor=0,
        numerator=(t, t, r + s, t - r - s),
        denominator=(s, t - s, r, t - r),
        modulus=t,
    )


def dissection_lhs(params: DissectionParams, order: int) -> LatticeSeries:
    """``(q^t, q^t, q^(r+s), q^(t-r-s); q^t) / (q^s, q^(t-s), q^r, q^(t-r); q^t)``."""
    return dissection_lhs_factors(params).series(order)


def dissection_term_factors(params: DissectionParams, j: int) -> DissectionTerm:
    t, s, r, p = params.t, params.s, params.r, params.p
    if not 0 <= j < p:
        raise DissectionError(f"Term index {j} outside 0..{p - 1}.")
    return DissectionTerm(
        j=j,
        prefactor=j * r,
        numerator=(p * t, p * t, p * r + s + j * t, (p - j) * t - p * r - s),
        denominator=(j * t + s, (p - j) * t - s, p * r, (t - r) * p),
        modulus=p * t,
    )


def dissection_terms(params: DissectionParams, order: int) -> list[LatticeSeries]:
    """The ``p`` components of the dissection, each truncated at ``order``."""
    return [dissection_term_factors(params, j).series(order) for j in range(params.p)]


def verify_dissection(params: DissectionParams, order: int) -> LatticeSeries:
    """Left side minus the sum of the dissection terms."""
    residual = dissection_lhs(params, order)
    for term in dissection_terms(params, order):
        residual = sub(residual, term)
    return residual


def vanishing_residue(params: DissectionParams) -> Optional[int]:
    """Residue class mod p whose term is annihilated by a ``(1 - 1)`` factor, if any."""
    for j in range(params.p):
        if dissection_term_factors(params, j).vanishes:
            return (j * params.r) % params.p
    return None


@dataclass(frozen=True)
class QuotientId:
    """A two-over-two Pochhammer quotient from the vanishing-coefficient theorems."""

    key: str
    label: str
    numerator: tuple[int, int]
    denominator: tuple[int, int]
    modulus: int
    residue: int
    progression: int

    @property
    def theorem(self) -> str:
        return self.key.split(".")[0]


QUOTIENTS: dict[str, QuotientId] = {
    entry.key: entry
    for entry in (
        QuotientId("T21.a", "A1*", (4, 14), (5, 13), 18, 8, 9),
        QuotientId("T21.b", "A3*", (2, 16), (7, 11), 18, 8, 9),
        QuotientId("T21.c", "1/A4*", (8, 10), (1, 17), 18, 3, 9),
        QuotientId("T22.a", "B1*", (6, 20), (7, 19), 26, 11, 13),
        QuotientId("T22.b", "1/B2*", (8, 18), (5, 21), 26, 11, 13),
        QuotientId("T22.c", "B3*", (4, 22), (9, 17), 26, 7, 13),
        QuotientId("T22.d", "1/B4*", (10, 16), (3, 23), 26, 7, 13),
        QuotientId("T22.e", "B5*", (2, 24), (11, 15), 26, 12, 13),
        QuotientId("T22.f", "1/B6*", (12, 14), (1, 25), 26, 12, 13),
        QuotientId("T23.a", "1/C1*", (8, 22), (7, 23), 30, 2, 15),
        QuotientId("T23.b", "C4*", (4, 26), (11, 19), 30, 9, 15),
        QuotientId("T23.c", "C6*", (2, 28), (13, 17), 30, 4, 15),
        QuotientId("T23.d", "1/C7*", (14, 16), (1, 29), 30, 14, 15),
    )
}

THEOREM_PARAMS: dict[str, DissectionParams] = {
    "T21": DissectionParams(18, 9, 5, 9),
    "T22": DissectionParams(26, 13, 7, 13),
    "T23": DissectionParams(30, 15, 7, 15),
}


def lookup_quotient(key: str) -> QuotientId:
    try:
        return QUOTIENTS[key]
    except KeyError as exc:
        raise UnknownQuotientError(key) from exc


def quotient_series(quotient: QuotientId | str, order: int, *, reciprocal: bool = False) -> LatticeSeries:
    """The quotient (or its reciprocal) as an integer-exponent series."""
    entry = lookup_quotient(quotient) if isinstance(quotient, str) else quotient
    top, bottom = entry.numerator, entry.denominator
    if reciprocal:
        top, bottom = bottom, top
    return _quotient(top, bottom, entry.modulus, order)


ScanStatus = Literal["AllZero", "FirstNonzero"]


@dataclass(frozen=True)
class ScanOutcome:
    status: ScanStatus
    n: Optional[int] = None
    coefficient: Optional[int] = None

    def __post_init__(self) -> None:
        if self.status == "FirstNonzero" and not self.coefficient:
            raise DissectionError("A FirstNonzero outcome needs a nonzero coefficient.")

    @classmethod
    def all_zero(cls) -> "ScanOutcome":
        return cls("AllZero")

    def to_dict(self) -> dict[str, Optional[int] | str]:
        return {"status": self.status, "n": self.n, "coefficient": self.coefficient}


def vanish_scan(series: LatticeSeries, residue: int, modulus: int, order: int) -> ScanOutcome:
    """Smallest exponent ``≡ residue (mod modulus)`` up to ``order`` with a nonzero coefficient."""
    if series.scale != 1:
        raise SeriesError("Vanishing scans need an integer-exponent series.")
    if modulus <= 0 or not 0 <= residue < modulus:
        raise DissectionError(f"Progression {modulus}n+{residue} is out of range.")
    if series.trunc < order:
        raise SeriesError(f"Series known through {series.trunc}, scan needs {order}.")
    exponent = residue
    while exponent < series.min_exp:
        exponent += modulus
    while exponent <= order:
        value = series.at(exponent)
        if value:
            logger.debug("First nonzero coefficient on %sn+%s at q^%s: %s.", modulus, residue, exponent, value)
            return ScanOutcome("FirstNonzero", exponent, value)
        exponent += modulus
    return ScanOutcome.all_zero()


def progression_vanishes(series: LatticeSeries, residue: int, modulus: int) -> bool:
    """Extraction view of the same question."""
    return extract_progression(series, residue, modulus).is_zero


def reduction_multiplier(k: int, order: int, *, denominator_power: int = 4) -> LatticeSeries:
    """``(q^k; q^k)^2 / (q^2k; q^2k)^denominator_power``."""
    return pochhammer_quotient(
        (PochhammerSpec(k, k, power=2),),
        (PochhammerSpec(2 * k, 2 * k, power=denominator_power),),
        1,
        order,
    )


def reduction_sides(
    theorem: str,
    order: int,
    *,
    denominator_power: int = 4,
) -> tuple[LatticeSeries, LatticeSeries]:
    """Dissection left side times the multiplier, against the theorem's first quotient."""
    try:
        params = THEOREM_PARAMS[theorem]
    except KeyError as exc:
        raise DissectionError(f"Unknown theorem tag {theorem!r}.") from exc
    if params.t != 2 * params.s:
        raise DissectionError("Reductions need s = t/2.")
    lhs = mul(dissection_lhs(params, order), reduction_multiplier(params.s, order, denominator_power=denominator_power))
    first = next(entry for entry in QUOTIENTS.values() if entry.theorem == theorem)
    return lhs, quotient_series(first, order)


def verify_reduction(theorem: str, order: int, *, denominator_power: int = 4) -> LatticeSeries:
    lhs, rhs = reduction_sides(theorem, order, denominator_power=denominator_power)
    return sub(lhs, rhs)


def reciprocal_product(quotient: QuotientId | str, order: int) -> LatticeSeries:
    """A quotient times its reciprocal; exactly one through ``order``."""
    return mul(quotient_series(quotient, order), quotient_series(quotient, order, reciprocal=True))


__all__ = [
    "DissectionError",
    "DissectionParams",
    "DissectionTerm",
    "QUOTIENTS",
    "QuotientId",
    "ScanOutcome",
    "THEOREM_PARAMS",
    "UnknownQuotientError",
    "dissection_lhs",
    "dissection_lhs_factors",
    "dissection_term_factors",
    "dissection_terms",
    "lookup_quotient",
    "progression_vanishes",
    "reciprocal_product",
    "quotient_series",
    "reduction_multiplier",
    "reduction_sides",
    "vanish_scan",
    "vanishing_residue",
    "verify_dissection",
    "verify_reduction",
]
