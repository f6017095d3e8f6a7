from __future__ import annotations

import random
from fractions import Fraction

import pytest

from src.engine.theta import SignedMonomial
from src.utils.monomials import (
    MonomialParseError,
    parse_monomial,
    parse_theta_pair,
    random_monomial,
    random_theta_pair,
)


@pytest.mark.parametrize(
    ("text", "sign", "exponent"),
    [
        ("q", 1, Fraction(1)),
        ("-q^4", -1, Fraction(4)),
        ("q^(17/4)", 1, Fraction(17, 4)),
        ("-q^{-18}", -1, Fraction(-18)),
        (" - q^( 1 / 4 ) ", -1, Fraction(1, 4)),
        ("-1", -1, Fraction(0)),
        ("q^2/4", 1, Fraction(1, 2)),
    ],
)
def test_parse_monomial(text: str, sign: int, exponent: Fraction) -> None:
    assert parse_monomial(text) == SignedMonomial(sign, exponent)


@pytest.mark.parametrize("text", ["", "x", "2q", "q^", "q^(1/0)", "q^a"])
def test_invalid_monomials(text: str) -> None:
    with pytest.raises(MonomialParseError):
        parse_monomial(text)


def test_parse_theta_pair() -> None:
    assert parse_theta_pair("-q^(1/4),q^(17/4)") == (SignedMonomial.q(Fraction(1, 4), sign=-1), SignedMonomial.q(Fraction(17, 4)))
    with pytest.raises(MonomialParseError):
        parse_theta_pair("q")


def test_random_monomial_stays_on_lattice() -> None:
    rng = random.Random(7)
    for _ in range(200):
        value = random_monomial(rng, denominators=(4,), max_exponent=2)
        assert 4 % value.exponent.denominator == 0
        assert 0 < value.exponent <= 2


def test_random_theta_pair_is_admissible() -> None:
    rng = random.Random(11)
    for _ in range(200):
        a, b = random_theta_pair(rng)
        assert a.exponent + b.exponent > 0


def test_random_draws_are_reproducible() -> None:
    first = [random_theta_pair(random.Random("seed")) for _ in range(3)]
    second = [random_theta_pair(random.Random("seed")) for _ in range(3)]
    assert first == second
