from __future__ import annotations

import random
from fractions import Fraction

import pytest

from src.engine.series import (
    LatticeError,
    LatticeSeries,
    NonUnitError,
    ScaleMismatchError,
    TruncationError,
    add,
    agreement_order,
    coefficient,
    eq_to_order,
    expand,
    extract_progression,
    invert,
    monomial,
    mul,
    neg,
    polynomial,
    power,
    rescale,
    shift,
    sub,
    substitute_power,
    truncate,
)

SEEDS = range(200)


def random_series(
    rng: random.Random,
    *,
    scale: int = 1,
    low: int = -3,
    unit: bool = False,
    length: int | None = None,
) -> LatticeSeries:
    min_exp = rng.randint(low, 3)
    size = length or rng.randint(4, 18)
    coeffs = [rng.randint(-9, 9) for _ in range(size)]
    coeffs[0] = rng.choice((1, -1)) if unit else rng.choice([c for c in range(-9, 10) if c])
    return LatticeSeries.from_coeffs(coeffs, scale=scale, min_exp=min_exp)


def known(series: LatticeSeries) -> list[int]:
    return series.dense(series.min_exp, series.trunc)


def test_monomial_examples() -> None:
    one = monomial(1, 0, 1, 5)
    assert one.min_exp == 0 and one.coeffs == (1, 0, 0, 0, 0, 0)
    half = monomial(-1, Fraction(1, 2), 2, 4)
    assert half.min_exp == 1
    assert half.at(1) == -1
    with pytest.raises(LatticeError):
        monomial(2, Fraction(1, 3), 2, 4)


def test_monomial_beyond_truncation_is_zero() -> None:
    assert monomial(3, 7, 1, 5).is_zero


def test_zero_series_canonical_form() -> None:
    zero = LatticeSeries.zero(2, 10)
    assert zero.min_exp == 11
    assert zero.coeffs == ()
    assert add(monomial(1, 1, 2, 10), neg(monomial(1, 1, 2, 10))) == zero


def test_telescoping_product() -> None:
    n = 25
    geometric = LatticeSeries.from_coeffs([1] * (n + 1))
    product = mul(polynomial(((1, 0), (-1, 1)), 1, n), geometric)
    assert product == monomial(1, 0, 1, n)


def test_invert_geometric() -> None:
    inverse = invert(polynomial(((1, 0), (-1, 1)), 1, 30))
    assert inverse.coeffs == (1,) * 31


def test_invert_rejects_non_units() -> None:
    with pytest.raises(NonUnitError):
        invert(polynomial(((2, 0), (1, 1)), 1, 10))
    with pytest.raises(NonUnitError):
        invert(LatticeSeries.zero(1, 10))


def test_invert_negates_min_exp() -> None:
    series = LatticeSeries.from_coeffs([1, 3, -2, 5], min_exp=2)
    inverse = invert(series)
    assert inverse.min_exp == -2
    assert inverse.trunc == series.trunc - 2 * series.min_exp


def test_scale_mismatch() -> None:
    with pytest.raises(ScaleMismatchError):
        add(monomial(1, 0, 1, 4), monomial(1, 0, 2, 8))


def test_mul_truncation_rule() -> None:
    a = LatticeSeries.from_coeffs([1, 1, 1], min_exp=-2, trunc=5)
    b = LatticeSeries.from_coeffs([1, 2], min_exp=1, trunc=10)
    assert mul(a, b).trunc == min(5 + 1, 10 - 2)


def test_at_beyond_truncation_raises() -> None:
    series = LatticeSeries.from_coeffs([1, 2, 3])
    assert series.at(-4) == 0
    with pytest.raises(TruncationError):
        series.at(3)


def test_coefficient_uses_exponents() -> None:
    series = polynomial(((5, Fraction(9, 2)),), 2, 20)
    assert coefficient(series, Fraction(9, 2)) == 5
    assert coefficient(series, 4) == 0


def test_eq_to_order_reports_first_difference() -> None:
    a = LatticeSeries.from_coeffs([1, 0, 3, 4])
    b = LatticeSeries.from_coeffs([1, 0, 2, 4])
    agreement = eq_to_order(a, b, 3)
    assert not agreement
    assert agreement.witness is not None
    assert (agreement.witness.index, agreement.witness.lhs, agreement.witness.rhs) == (2, 3, 2)
    assert eq_to_order(a, b, 1)


def test_eq_to_order_needs_known_coefficients() -> None:
    a = LatticeSeries.from_coeffs([1, 2])
    with pytest.raises(TruncationError):
        eq_to_order(a, a, 5)


def test_agreement_order() -> None:
    a = LatticeSeries.from_coeffs([1, 2, 3, 4, 5])
    b = LatticeSeries.from_coeffs([1, 2, 3, 0, 5, 6])
    assert agreement_order(a, b) == 2
    assert agreement_order(a, a) == 4


def test_shift_and_truncate() -> None:
    series = LatticeSeries.from_coeffs([1, 2, 3], scale=2)
    moved = shift(series, 3)
    assert (moved.min_exp, moved.trunc) == (3, 5)
    assert truncate(moved, 4).coeffs == (1, 2)
    assert truncate(moved, 1).is_zero
    with pytest.raises(TruncationError):
        truncate(moved, 9)


def test_rescale_between_lattices() -> None:
    quarter = polynomial(((1, 0), (-1, Fraction(1, 2)), (3, 2)), 4, 12)
    half = rescale(quarter, 2)
    assert half.scale == 2
    assert half.trunc == 6
    assert half.dense(0, 4) == [1, -1, 0, 0, 3]
    with pytest.raises(LatticeError):
        rescale(polynomial(((1, Fraction(1, 4)),), 4, 12), 2)


def test_substitute_power_with_fraction() -> None:
    series = polynomial(((1, 0), (1, 1), (1, 2)), 1, 2)
    image = substitute_power(series, Fraction(1, 2))
    assert image.scale == 2
    assert image.trunc == 2
    assert image.dense(0, 2) == [1, 1, 1]


def test_extract_progression_requires_integer_lattice() -> None:
    with pytest.raises(LatticeError):
        extract_progression(monomial(1, 0, 2, 10), 1, 3)


def test_expand_pads_until_order() -> None:
    calls: list[int] = []

    def build(n: int) -> LatticeSeries:
        calls.append(n)
        return mul(LatticeSeries.from_coeffs([1, 1], min_exp=-3, trunc=n), LatticeSeries.from_coeffs([1], trunc=n))

    result = expand(build, 10)
    assert result.trunc == 10
    assert calls[0] == 10
    assert len(calls) == 2


def test_expand_gives_up() -> None:
    with pytest.raises(TruncationError):
        expand(lambda n: LatticeSeries.zero(1, n // 2 - 1), 10, max_attempts=2)


def test_operator_sugar() -> None:
    x = LatticeSeries.from_coeffs([1, 1], trunc=6)
    assert x * 2 == add(x, x)
    assert x - x == LatticeSeries.zero(1, 6)
    assert (1 - x) == neg(shift(LatticeSeries.from_coeffs([1], trunc=5), 1))
    assert (x**3).coeffs[:4] == (1, 3, 3, 1)
    assert mul(x / x, x) == x


@pytest.mark.parametrize("seed", SEEDS)
def test_ring_laws(seed: int) -> None:
    rng = random.Random(seed)
    scale = rng.choice((1, 2, 4))
    a, b, c = (random_series(rng, scale=scale) for _ in range(3))
    assert add(a, b) == add(b, a)
    assert mul(a, b) == mul(b, a)
    assert add(add(a, b), c) == add(a, add(b, c))
    left = mul(mul(a, b), c)
    right = mul(a, mul(b, c))
    assert left.trunc == right.trunc
    assert left == right
    distributed = add(mul(a, b), mul(a, c))
    combined = mul(a, add(b, c))
    assert eq_to_order(combined, distributed, min(combined.trunc, distributed.trunc))
    assert sub(a, a).is_zero


@pytest.mark.parametrize("seed", SEEDS)
def test_invert_is_inverse(seed: int) -> None:
    rng = random.Random(10_000 + seed)
    a = random_series(rng, scale=rng.choice((1, 2)), unit=True)
    product = mul(a, invert(a))
    assert product == monomial(1, 0, a.scale, product.trunc)
    assert product.trunc == a.trunc - a.min_exp


@pytest.mark.parametrize("seed", SEEDS)
def test_substitution_composes(seed: int) -> None:
    rng = random.Random(20_000 + seed)
    a = random_series(rng, low=0)
    j, k = rng.randint(1, 4), rng.randint(1, 4)
    assert substitute_power(substitute_power(a, j), k) == substitute_power(a, j * k)
    fractional = substitute_power(a, Fraction(1, 2))
    assert substitute_power(fractional, 2, scale=1) == a


@pytest.mark.parametrize("seed", SEEDS)
def test_extraction_is_linear(seed: int) -> None:
    rng = random.Random(30_000 + seed)
    size = rng.randint(10, 30)
    a = random_series(rng, low=0, length=size)
    b = LatticeSeries.from_coeffs(
        [rng.choice((1, -1))] + [rng.randint(-5, 5) for _ in range(size - 1)],
        min_exp=a.min_exp,
        trunc=a.trunc,
    )
    modulus = rng.randint(2, 6)
    residue = rng.randrange(modulus)
    assert extract_progression(add(a, b), residue, modulus) == add(
        extract_progression(a, residue, modulus), extract_progression(b, residue, modulus)
    )
    for n in range(extract_progression(a, residue, modulus).trunc + 1):
        assert extract_progression(a, residue, modulus).at(n) == a.at(modulus * n + residue)


@pytest.mark.parametrize("seed", SEEDS)
def test_truncation_is_sound(seed: int) -> None:
    rng = random.Random(40_000 + seed)
    a = random_series(rng, unit=True)
    b = random_series(rng)
    extra = rng.randint(3, 12)
    longer_a = LatticeSeries.from_coeffs(known(a) + [rng.randint(-9, 9) for _ in range(extra)], min_exp=a.min_exp)
    longer_b = LatticeSeries.from_coeffs(known(b) + [rng.randint(-9, 9) for _ in range(extra)], min_exp=b.min_exp)
    short_product = mul(a, b)
    long_product = mul(longer_a, longer_b)
    assert eq_to_order(short_product, long_product, short_product.trunc)
    short_inverse = invert(a)
    long_inverse = invert(longer_a)
    assert eq_to_order(short_inverse, long_inverse, short_inverse.trunc)


@pytest.mark.parametrize("seed", range(40))
def test_power_matches_repeated_mul(seed: int) -> None:
    rng = random.Random(50_000 + seed)
    a = random_series(rng, low=0, unit=True)
    n = rng.randint(0, 5)
    expected = monomial(1, 0, 1, a.trunc - a.min_exp)
    for _ in range(n):
        expected = mul(expected, a)
    result = power(a, n)
    order = min(result.trunc, expected.trunc)
    assert eq_to_order(result, expected, order)
