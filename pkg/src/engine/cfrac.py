"""Entry 12 continued fractions and the named fractions of order 18, 26 and 30."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Callable, Iterator, Optional

from .series import (
    ExponentLike,
    LatticeError,
    LatticeSeries,
    agreement_order,
    as_exponent,
    eq_to_order,
    invert,
    monomial,
    mul,
    polynomial,
    rescale,
    to_lattice,
    truncate,
)
from .theta import PochhammerSpec, SignedMonomial, ThetaPair, pochhammer_quotient, theta_quotient

logger = logging.getLogger(__name__)

WORKING_SCALE = 4
RESULT_SCALE = 2
DEFAULT_DEPTH_CAP = 64

# Family letter -> K; the fractions have modulus 2K and q -> q^(K/2).
FAMILIES: dict[str, int] = {"A": 9, "B": 13, "C": 15}


class ContinuedFractionError(ValueError):
    """Malformed continued fraction or inadmissible Entry 12 arguments."""


class StabilizationError(ContinuedFractionError):
    """Convergents failed to settle within the depth cap."""

    def __init__(self, message: str, *, best_order: int, depth: int) -> None:
        super().__init__(message)
        self.best_order = best_order
        self.depth = depth


class UnknownContinuedFractionError(KeyError):
    pass


PartialTerm = tuple[LatticeSeries, LatticeSeries]


@dataclass(frozen=True)
class CFSpec:
    """``lead_factor / (d0 + n1/(d1 + n2/(d2 + ...)))`` over a fixed lattice and truncation."""

    scale: int
    order: int
    d0: LatticeSeries
    lead_factor: LatticeSeries
    partial: Callable[[int], PartialTerm]

    def terms(self) -> Iterator[PartialTerm]:
        """Yield ``(n_k, d_k)`` for ``k = 1, 2, ...``."""
        k = 1
        while True:
            yield self.partial(k)
            k += 1


def _check_partial(k: int, numerator: LatticeSeries, denominator: LatticeSeries) -> None:
    if not numerator.is_zero and numerator.min_exp <= 0:
        raise ContinuedFractionError(
            f"Partial numerator {k} has order {numerator.order}; formal convergence needs a positive order."
        )
    if denominator.min_exp != 0 or denominator.coeffs[0] not in (1, -1):
        raise ContinuedFractionError(f"Partial denominator {k} does not have a unit constant term.")


def _binomial(first: SignedMonomial, second: SignedMonomial, scale: int, order: int) -> LatticeSeries:
    return polynomial(
        ((first.sign, first.exponent), (second.sign, second.exponent)),
        scale,
        order,
    )


def _check_entry12(a: SignedMonomial, b: SignedMonomial, qpow: Fraction, scale: int) -> None:
    if qpow <= 0:
        raise ContinuedFractionError(f"The q-power must be positive, got {qpow}.")
    if a.exponent + b.exponent <= 0:
        raise ContinuedFractionError(f"Entry 12 needs |ab| < 1; got a={a}, b={b}.")
    try:
        for value in (a.exponent, b.exponent, qpow):
            to_lattice(value, scale)
    except LatticeError as exc:
        raise ContinuedFractionError(str(exc)) from exc


def entry12_cf(
    a: SignedMonomial,
    b: SignedMonomial,
    qpow: ExponentLike,
    *,
    order: int,
    scale: int = WORKING_SCALE,
    lead_factor: Optional[LatticeSeries] = None,
) -> CFSpec:
    """The continued fraction side of Entry 12 with ``q -> q^qpow``."""
    power = as_exponent(qpow)
    _check_entry12(a, b, power, scale)
    ab = a * b
    one = SignedMonomial(1, 0)
    d0 = _binomial(one, -ab, scale, order)

    def partial(k: int) -> PartialTerm:
        step = SignedMonomial(1, (2 * k - 1) * power)
        left = _binomial(a, -(b * step), scale, order)
        right = _binomial(b, -(a * step), scale, order)
        numerator = mul(left, right)
        denominator = mul(d0, _binomial(SignedMonomial(1, 2 * k * power), one, scale, order))
        _check_partial(k, numerator, denominator)
        return numerator, denominator

    lead = lead_factor if lead_factor is not None else monomial(1, 0, scale, order)
    return CFSpec(scale=scale, order=order, d0=d0, lead_factor=lead, partial=partial)


def entry12_lhs(
    a: SignedMonomial,
    b: SignedMonomial,
    qpow: ExponentLike,
    *,
    order: int,
    scale: int = WORKING_SCALE,
) -> LatticeSeries:
    """``(a^2q^3, b^2q^3; q^4)/(a^2q, b^2q; q^4)`` with ``q -> q^qpow``."""
    power = as_exponent(qpow)
    _check_entry12(a, b, power, scale)
    modulus = 4 * power
    a2 = 2 * a.exponent
    b2 = 2 * b.exponent
    numerators = (PochhammerSpec(a2 + 3 * power, modulus), PochhammerSpec(b2 + 3 * power, modulus))
    denominators = (PochhammerSpec(a2 + power, modulus), PochhammerSpec(b2 + power, modulus))
    return pochhammer_quotient(numerators, denominators, scale, order)


def convergent(spec: CFSpec, depth: int, order: Optional[int] = None) -> LatticeSeries:
    """``lead_factor * P_K / Q_K`` from the three-term recurrence."""
    if depth < 0:
        raise ContinuedFractionError(f"Depth must be non-negative, got {depth}.")
    return next(islice(_convergents(spec, order), depth, None))


def _convergents(spec: CFSpec, order: Optional[int] = None) -> Iterator[LatticeSeries]:
    target = spec.order if order is None else order
    if target > spec.order:
        raise ContinuedFractionError(f"Requested order {target} exceeds the fraction's order {spec.order}.")
    one = monomial(1, 0, spec.scale, spec.order)
    zero = LatticeSeries.zero(spec.scale, spec.order)
    p_prev, p_curr = zero, one
    q_prev, q_curr = one, spec.d0

    def value() -> LatticeSeries:
        if q_curr.is_zero or q_curr.coeffs[0] not in (1, -1):
            raise ContinuedFractionError("Convergent denominator has a non-unit leading coefficient.")
        result = mul(spec.lead_factor, mul(p_curr, invert(q_curr)))
        return truncate(result, target)

    yield value()
    for numerator, denominator in spec.terms():
        p_prev, p_curr = p_curr, mul(denominator, p_curr) + mul(numerator, p_prev)
        q_prev, q_curr = q_curr, mul(denominator, q_curr) + mul(numerator, q_prev)
        yield value()


@dataclass(frozen=True)
class Stabilized:
    """Stable convergent with the depth it settled at and the consecutive agreement orders."""

    value: LatticeSeries
    depth: int
    agreements: tuple[int, ...]


def stabilize(spec: CFSpec, order: int, depth_cap: int = DEFAULT_DEPTH_CAP) -> Stabilized:
    """Smallest depth ``K <= depth_cap`` whose convergents ``K-1`` and ``K`` agree through ``order``."""
    if depth_cap < 1:
        raise ContinuedFractionError(f"depth_cap must be at least 1, got {depth_cap}.")
    agreements: list[int] = []
    previous: Optional[LatticeSeries] = None
    for depth, current in enumerate(_convergents(spec, order)):
        if previous is not None:
            reached = agreement_order(previous, current)
            agreements.append(reached)
            if eq_to_order(previous, current, order):
                logger.debug("Continued fraction stabilized at depth %s through order %s.", depth, order)
                return Stabilized(current, depth, tuple(agreements))
        if depth >= depth_cap:
            break
        previous = current
    best = max(agreements, default=-1)
    raise StabilizationError(
        f"No stabilization through order {order} by depth {depth_cap}; best agreement {best}.",
        best_order=best,
        depth=depth_cap,
    )


def stabilized_value(spec: CFSpec, order: int, depth_cap: int = DEFAULT_DEPTH_CAP) -> LatticeSeries:
    return stabilize(spec, order, depth_cap).value


@dataclass(frozen=True)
class NamedCF:
    """One of the named fractions ``A1..A4``, ``B1..B6``, ``C1..C7``."""

    family: str
    index: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise UnknownContinuedFractionError(self.family)
        if not 1 <= self.index <= (FAMILIES[self.family] - 1) // 2:
            raise UnknownContinuedFractionError(f"{self.family}{self.index}")

    @property
    def key(self) -> str:
        return f"{self.family}{self.index}"

    @property
    def k(self) -> int:
        return FAMILIES[self.family]

    @property
    def modulus(self) -> int:
        return 2 * self.k

    @property
    def qpow(self) -> Fraction:
        return Fraction(self.k, 2)

    @property
    def a(self) -> SignedMonomial:
        return SignedMonomial(1, Fraction(2 * self.index - 1, 4))

    @property
    def b(self) -> SignedMonomial:
        return SignedMonomial(1, Fraction(2 * self.k - 2 * self.index + 1, 4))

    @property
    def lead_exponent(self) -> int:
        return (self.k + 1) // 2 - self.index

    @property
    def denominator_exponent(self) -> int:
        return (self.k - 1) // 2 + self.index

    @property
    def numerator_args(self) -> ThetaPair:
        c = self.lead_exponent
        return SignedMonomial(-1, c), SignedMonomial(-1, self.modulus - c)

    @property
    def denominator_args(self) -> ThetaPair:
        d = self.denominator_exponent
        return SignedMonomial(-1, d), SignedMonomial(-1, self.modulus - d)

    def continued_fraction(self, order: int, *, scale: int = WORKING_SCALE) -> CFSpec:
        lead = polynomial(((1, 0), (-1, self.lead_exponent)), scale, order)
        return entry12_cf(self.a, self.b, self.qpow, order=order, scale=scale, lead_factor=lead)

    def quotient(self, order: int, *, scale: int = RESULT_SCALE) -> LatticeSeries:
        """``f(-q^c, -q^(2K-c)) / f(-q^d, -q^(2K-d))``."""
        return theta_quotient((self.numerator_args,), (self.denominator_args,), order, scale=scale)

    def product_form(self, order: int) -> LatticeSeries:
        """``(1 - q^c)`` times the Entry 12 product side, in half-units."""
        working = order * WORKING_SCALE // RESULT_SCALE
        lead = polynomial(((1, 0), (-1, self.lead_exponent)), WORKING_SCALE, working)
        value = mul(lead, entry12_lhs(self.a, self.b, self.qpow, order=working))
        return rescale(value, RESULT_SCALE)


NAMED_CFS: tuple[NamedCF, ...] = tuple(
    NamedCF(family, index)
    for family, k in FAMILIES.items()
    for index in range(1, (k - 1) // 2 + 1)
)


def lookup_named_cf(key: str) -> NamedCF:
    """Resolve ``"A1"``-style keys."""
    text = key.strip().upper()
    try:
        return NamedCF(text[0], int(text[1:]))
    except (IndexError, ValueError) as exc:
        raise UnknownContinuedFractionError(key) from exc


def named_cf(family: str, index: int, *, order: int) -> tuple[CFSpec, Callable[[], LatticeSeries]]:
    """The Entry 12 fraction of a named CF at the working lattice, plus its theta quotient thunk.

    ``order`` counts half-units (the result lattice); the fraction is built at
    twice that on the quarter lattice.
    """
    entry = NamedCF(family, index)
    spec = entry.continued_fraction(order * WORKING_SCALE // RESULT_SCALE)
    return spec, lambda: entry.quotient(order)


def evaluate_named_cf(entry: NamedCF, order: int, depth_cap: int = DEFAULT_DEPTH_CAP) -> Stabilized:
    """Stabilize the fraction on the quarter lattice and bring it back to half-units.

    Landing off the half lattice raises :class:`LatticeError`.
    """
    working = order * WORKING_SCALE // RESULT_SCALE
    spec = entry.continued_fraction(working)
    stable = stabilize(spec, working, depth_cap)
    return Stabilized(rescale(stable.value, RESULT_SCALE), stable.depth, stable.agreements)


__all__ = [
    "CFSpec",
    "ContinuedFractionError",
    "DEFAULT_DEPTH_CAP",
    "FAMILIES",
    "NAMED_CFS",
    "NamedCF",
    "RESULT_SCALE",
    "Stabilized",
    "StabilizationError",
    "UnknownContinuedFractionError",
    "WORKING_SCALE",
    "convergent",
    "entry12_cf",
    "entry12_lhs",
    "evaluate_named_cf",
    "lookup_named_cf",
    "named_cf",
    "stabilize",
    "stabilized_value",
]
