"""Truncated Laurent series on the exponent lattice (1/D)·Z.

Every value in the engine is a :class:`LatticeSeries`: a dense window of exact
integer coefficients for the exponents ``min_exp/D .. trunc/D``. Coefficients
above ``trunc`` are unknown, and asking for them is an error rather than a
silent zero.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Callable, Iterable, Optional, Sequence, Union

logger = logging.getLogger(__name__)

ExponentLike = Union[int, Fraction, str]


class SeriesError(ValueError):
    """Base error for lattice-series arithmetic."""


class ScaleMismatchError(SeriesError):
    """Binary operation on series living on different lattices."""


class LatticeError(SeriesError):
    """Exponent not representable on the requested lattice."""


class TruncationError(SeriesError):
    """Coefficient requested beyond the known truncation order."""


class NonUnitError(SeriesError):
    """Inversion of a series whose leading coefficient is not +1 or -1."""


def as_exponent(value: ExponentLike) -> Fraction:
    """Coerce ints, Fractions and strings like ``"9/2"`` to an exact exponent."""
    if isinstance(value, float):
        raise LatticeError("Floating point exponents are not accepted.")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise LatticeError(f"Could not read exponent {value!r}.") from exc


def to_lattice(exponent: ExponentLike, scale: int) -> int:
    """Return the lattice index of ``exponent`` at scale ``scale``."""
    value = as_exponent(exponent) * scale
    if value.denominator != 1:
        raise LatticeError(f"Exponent {exponent} is not on the lattice 1/{scale}.")
    return value.numerator


def _check_scale(scale: int) -> None:
    if not isinstance(scale, int) or scale <= 0:
        raise LatticeError(f"Lattice scale must be a positive integer, got {scale!r}.")


@dataclass(frozen=True)
class LatticeSeries:
    """Immutable truncated series ``sum coeffs[i] q^((min_exp + i)/scale) + O(q^((trunc+1)/scale))``."""

    scale: int
    min_exp: int
    trunc: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_scale(self.scale)
        if not self.coeffs:
            if self.min_exp != self.trunc + 1:
                raise SeriesError("Zero series must have min_exp = trunc + 1.")
            return
        if len(self.coeffs) != self.trunc - self.min_exp + 1:
            raise SeriesError("Coefficient window does not match min_exp..trunc.")
        if self.coeffs[0] == 0:
            raise SeriesError("Series is not canonical: leading coefficient is zero.")

    @classmethod
    def from_coeffs(
        cls,
        coeffs: Iterable[int],
        *,
        scale: int = 1,
        min_exp: int = 0,
        trunc: Optional[int] = None,
    ) -> "LatticeSeries":
        """Build a canonical series from a dense coefficient run starting at ``min_exp``."""
        values = list(coeffs)
        if trunc is None:
            trunc = min_exp + len(values) - 1
        return _canonical(scale, min_exp, trunc, values)

    @classmethod
    def zero(cls, scale: int = 1, trunc: int = 0) -> "LatticeSeries":
        return cls(scale=scale, min_exp=trunc + 1, trunc=trunc, coeffs=())

    @classmethod
    def one(cls, scale: int = 1, trunc: int = 0) -> "LatticeSeries":
        return monomial(1, 0, scale, trunc)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def order(self) -> Fraction:
        """Exponent of the lowest nonzero term (or of the first unknown one for zero)."""
        return Fraction(self.min_exp, self.scale)

    @property
    def precision(self) -> Fraction:
        """Largest exponent whose coefficient is known."""
        return Fraction(self.trunc, self.scale)

    def at(self, index: int) -> int:
        """Coefficient at lattice index ``index``."""
        if index > self.trunc:
            raise TruncationError(
                f"Coefficient at q^({index}/{self.scale}) lies beyond truncation {self.trunc}."
            )
        if index < self.min_exp:
            return 0
        return self.coeffs[index - self.min_exp]

    def dense(self, start: int, stop: int) -> list[int]:
        """Coefficients for lattice indices ``start..stop`` inclusive."""
        return [self.at(index) for index in range(start, stop + 1)]

    def nonzero_terms(self) -> Iterable[tuple[int, int]]:
        for offset, value in enumerate(self.coeffs):
            if value:
                yield self.min_exp + offset, value

    def __add__(self, other: object) -> "LatticeSeries":
        if isinstance(other, int):
            other = monomial(other, 0, self.scale, self.trunc)
        if not isinstance(other, LatticeSeries):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "LatticeSeries":
        return neg(self)

    def __sub__(self, other: object) -> "LatticeSeries":
        if isinstance(other, int):
            other = monomial(other, 0, self.scale, self.trunc)
        if not isinstance(other, LatticeSeries):
            return NotImplemented
        return add(self, neg(other))

    def __rsub__(self, other: object) -> "LatticeSeries":
        if isinstance(other, int):
            return add(monomial(other, 0, self.scale, self.trunc), neg(self))
        return NotImplemented

    def __mul__(self, other: object) -> "LatticeSeries":
        if isinstance(other, int):
            return scalar_mul(self, other)
        if not isinstance(other, LatticeSeries):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "LatticeSeries":
        if not isinstance(other, LatticeSeries):
            return NotImplemented
        return mul(self, invert(other))

    def __pow__(self, exponent: int) -> "LatticeSeries":
        return power(self, exponent)


def _canonical(scale: int, min_exp: int, trunc: int, values: Sequence[int]) -> LatticeSeries:
    limit = min(len(values), trunc - min_exp + 1)
    start = 0
    while start < limit and values[start] == 0:
        start += 1
    if start >= limit:
        return LatticeSeries.zero(scale, trunc)
    return LatticeSeries(
        scale=scale,
        min_exp=min_exp + start,
        trunc=trunc,
        coeffs=tuple(values[start:limit]) + (0,) * (trunc - min_exp + 1 - limit),
    )


def _same_scale(a: LatticeSeries, b: LatticeSeries) -> int:
    if a.scale != b.scale:
        raise ScaleMismatchError(
            f"Series live on different lattices (1/{a.scale} vs 1/{b.scale}); rescale first."
        )
    return a.scale


def monomial(coefficient: int, exponent: ExponentLike, scale: int, trunc: int) -> LatticeSeries:
    """``coefficient * q^exponent`` known through lattice index ``trunc``."""
    _check_scale(scale)
    index = to_lattice(exponent, scale)
    if coefficient == 0 or index > trunc:
        return LatticeSeries.zero(scale, trunc)
    return LatticeSeries(scale=scale, min_exp=index, trunc=trunc, coeffs=(coefficient,) + (0,) * (trunc - index))


def polynomial(terms: Iterable[tuple[int, ExponentLike]], scale: int, trunc: int) -> LatticeSeries:
    """Exact finite sum of ``(coefficient, exponent)`` terms, truncated at ``trunc``."""
    bucket: dict[int, int] = {}
    for coefficient, exponent in terms:
        index = to_lattice(exponent, scale)
        if index <= trunc:
            bucket[index] = bucket.get(index, 0) + coefficient
    bucket = {index: value for index, value in bucket.items() if value}
    if not bucket:
        return LatticeSeries.zero(scale, trunc)
    low = min(bucket)
    values = [0] * (trunc - low + 1)
    for index, value in bucket.items():
        values[index - low] = value
    return _canonical(scale, low, trunc, values)


def add(a: LatticeSeries, b: LatticeSeries) -> LatticeSeries:
    scale = _same_scale(a, b)
    trunc = min(a.trunc, b.trunc)
    low = min(a.min_exp, b.min_exp)
    if low > trunc:
        return LatticeSeries.zero(scale, trunc)
    values = [0] * (trunc - low + 1)
    for series in (a, b):
        for offset, value in enumerate(series.coeffs):
            index = series.min_exp + offset - low
            if index >= len(values):
                break
            values[index] += value
    return _canonical(scale, low, trunc, values)


def neg(a: LatticeSeries) -> LatticeSeries:
    if a.is_zero:
        return a
    return LatticeSeries(a.scale, a.min_exp, a.trunc, tuple(-value for value in a.coeffs))


def sub(a: LatticeSeries, b: LatticeSeries) -> LatticeSeries:
    return add(a, neg(b))


def scalar_mul(a: LatticeSeries, factor: int) -> LatticeSeries:
    if factor == 0:
        return LatticeSeries.zero(a.scale, a.trunc)
    return LatticeSeries(a.scale, a.min_exp, a.trunc, tuple(factor * value for value in a.coeffs))


def mul(a: LatticeSeries, b: LatticeSeries) -> LatticeSeries:
    """Dense convolution; ``trunc = min(trunc_a + min_b, trunc_b + min_a)``."""
    scale = _same_scale(a, b)
    trunc = min(a.trunc + b.min_exp, b.trunc + a.min_exp)
    if a.is_zero or b.is_zero:
        return LatticeSeries.zero(scale, trunc)
    low = a.min_exp + b.min_exp
    width = trunc - low + 1
    if width <= 0:
        return LatticeSeries.zero(scale, trunc)
    values = [0] * width
    b_coeffs = b.coeffs
    b_len = len(b_coeffs)
    for i, left in enumerate(a.coeffs):
        if i >= width:
            break
        if not left:
            continue
        span = min(b_len, width - i)
        for j in range(span):
            right = b_coeffs[j]
            if right:
                values[i + j] += left * right
    return _canonical(scale, low, trunc, values)


def power(a: LatticeSeries, exponent: int) -> LatticeSeries:
    """Non-negative integer power by repeated squaring."""
    if exponent < 0:
        return power(invert(a), -exponent)
    result = LatticeSeries.one(a.scale, a.trunc - a.min_exp)
    base = a
    first = True
    while exponent:
        if exponent & 1:
            result = base if first else mul(result, base)
            first = False
        exponent >>= 1
        if exponent:
            base = mul(base, base)
    return result


def invert(a: LatticeSeries) -> LatticeSeries:
    """Multiplicative inverse of a series led by +1 or -1."""
    if a.is_zero:
        raise NonUnitError("Cannot invert the zero series.")
    lead = a.coeffs[0]
    if lead not in (1, -1):
        raise NonUnitError(f"Leading coefficient {lead} is not a unit over the integers.")
    width = a.trunc - a.min_exp + 1
    tail = [(k, value) for k, value in enumerate(a.coeffs) if k and value]
    values = [0] * width
    values[0] = lead
    for n in range(1, width):
        total = 0
        for k, value in tail:
            if k > n:
                break
            total += value * values[n - k]
        values[n] = -lead * total
    min_exp = -a.min_exp
    return _canonical(a.scale, min_exp, min_exp + width - 1, values)


def divide(a: LatticeSeries, b: LatticeSeries) -> LatticeSeries:
    return mul(a, invert(b))


def shift(a: LatticeSeries, offset: int) -> LatticeSeries:
    """Multiply by ``q^(offset/D)``."""
    if a.is_zero:
        return LatticeSeries.zero(a.scale, a.trunc + offset)
    return LatticeSeries(a.scale, a.min_exp + offset, a.trunc + offset, a.coeffs)


def truncate(a: LatticeSeries, trunc: int) -> LatticeSeries:
    """Forget every coefficient above lattice index ``trunc``."""
    if trunc > a.trunc:
        raise TruncationError(f"Cannot extend truncation {a.trunc} to {trunc}.")
    if trunc < a.min_exp:
        return LatticeSeries.zero(a.scale, trunc)
    return _canonical(a.scale, a.min_exp, trunc, a.coeffs[: trunc - a.min_exp + 1])


def rescale(a: LatticeSeries, scale: int) -> LatticeSeries:
    """View ``a`` on the lattice 1/scale; every nonzero term must land on it."""
    _check_scale(scale)
    if scale == a.scale:
        return a
    ratio = Fraction(scale, a.scale)
    trunc = floor(a.trunc * ratio)
    terms: list[tuple[int, int]] = []
    for index, value in a.nonzero_terms():
        if index > a.trunc:
            break
        mapped = index * ratio
        if mapped.denominator != 1:
            raise LatticeError(
                f"Term q^({index}/{a.scale}) is not on the lattice 1/{scale}."
            )
        terms.append((value, mapped.numerator))
    return polynomial(((c, Fraction(k, scale)) for c, k in terms), scale, trunc)


def substitute_power(
    a: LatticeSeries,
    factor: ExponentLike,
    *,
    scale: Optional[int] = None,
) -> LatticeSeries:
    """Apply ``q -> q^factor``; the output lattice defaults to ``D * denominator(factor)``."""
    k = as_exponent(factor)
    if k <= 0:
        raise LatticeError(f"Substitution power must be positive, got {k}.")
    target = scale if scale is not None else a.scale * k.denominator
    _check_scale(target)
    ratio = k * target / a.scale
    # q^((trunc+1)/D) is the first unknown term; everything strictly below its image is known.
    trunc = ceil((a.trunc + 1) * ratio) - 1
    terms = []
    for index, value in a.nonzero_terms():
        mapped = index * ratio
        if mapped.denominator != 1:
            raise LatticeError(
                f"q^({index}/{a.scale}) maps off the lattice 1/{target} under q -> q^{k}."
            )
        terms.append((value, Fraction(mapped.numerator, target)))
    return polynomial(terms, target, trunc)


def extract_progression(a: LatticeSeries, residue: int, modulus: int) -> LatticeSeries:
    """``sum_n a_{modulus*n + residue} q^n`` for an integer-exponent series."""
    if a.scale != 1:
        raise LatticeError("Progressions are extracted from integer-exponent series (D = 1).")
    if modulus <= 0:
        raise SeriesError(f"Progression modulus must be positive, got {modulus}.")
    trunc = floor(Fraction(a.trunc - residue, modulus))
    first = ceil(Fraction(a.min_exp - residue, modulus))
    if first > trunc:
        return LatticeSeries.zero(1, trunc)
    values = [a.at(modulus * n + residue) for n in range(first, trunc + 1)]
    return _canonical(1, first, trunc, values)


def coefficient(a: LatticeSeries, exponent: ExponentLike) -> int:
    """Exact coefficient of ``q^exponent``; beyond the truncation this raises."""
    return a.at(to_lattice(exponent, a.scale))


@dataclass(frozen=True)
class Difference:
    """First exponent where two series disagree."""

    index: int
    scale: int
    lhs: int
    rhs: int

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.index, self.scale)


@dataclass(frozen=True)
class Agreement:
    """Result of comparing two series through a lattice order."""

    order: int
    scale: int
    witness: Optional[Difference] = None

    @property
    def equal(self) -> bool:
        return self.witness is None

    def __bool__(self) -> bool:
        return self.equal


def eq_to_order(a: LatticeSeries, b: LatticeSeries, order: int) -> Agreement:
    """Compare ``a`` and ``b`` for every lattice index up to ``order``."""
    scale = _same_scale(a, b)
    for series, label in ((a, "left"), (b, "right")):
        if series.trunc < order:
            raise TruncationError(
                f"The {label} series is only known through {series.trunc}, not {order}."
            )
    start = min(a.min_exp, b.min_exp)
    for index in range(start, order + 1):
        left = a.at(index)
        right = b.at(index)
        if left != right:
            return Agreement(order, scale, Difference(index, scale, left, right))
    return Agreement(order, scale)


def agreement_order(a: LatticeSeries, b: LatticeSeries) -> int:
    """Largest lattice index through which ``a`` and ``b`` coincide."""
    _same_scale(a, b)
    limit = min(a.trunc, b.trunc)
    start = min(a.min_exp, b.min_exp)
    for index in range(start, limit + 1):
        if a.at(index) != b.at(index):
            return index - 1
    return limit


def expand(
    build: Callable[[int], LatticeSeries],
    order: int,
    *,
    max_attempts: int = 6,
) -> LatticeSeries:
    """Evaluate ``build(order + pad)`` with growing padding until known through ``order``.

    Products with Laurent factors lose precision; the builder is re-run with the
    observed deficit added until the result covers ``order``.
    """
    pad = 0
    for _ in range(max_attempts):
        result = build(order + pad)
        if result.trunc >= order:
            return truncate(result, order)
        deficit = order - result.trunc
        logger.debug("Padding series build by %s lattice units (deficit %s).", pad + deficit, deficit)
        pad += deficit
    raise TruncationError(f"Could not build a series known through {order}.")


__all__ = [
    "Agreement",
    "Difference",
    "ExponentLike",
    "LatticeError",
    "LatticeSeries",
    "NonUnitError",
    "ScaleMismatchError",
    "SeriesError",
    "TruncationError",
    "add",
    "agreement_order",
    "as_exponent",
    "coefficient",
    "divide",
    "eq_to_order",
    "expand",
    "extract_progression",
    "invert",
    "monomial",
    "mul",
    "neg",
    "polynomial",
    "power",
    "rescale",
    "scalar_mul",
    "shift",
    "sub",
    "substitute_power",
    "to_lattice",
    "truncate",
]
