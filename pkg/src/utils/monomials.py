"""Signed monomial parsing and random sampling helpers."""

from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import Optional, Sequence

from ..engine.theta import SignedMonomial

MONOMIAL_PATTERN = re.compile(
    r"^(?P<sign>[+\-]?)\s*(?:(?P<unit>1)|q(?:\^(?P<exp>[^\s]+))?)$"
)
EXPONENT_PATTERN = re.compile(r"^[({]?\s*(?P<num>-?\d+)(?:\s*/\s*(?P<den>\d+))?\s*[)}]?$")


class MonomialParseError(ValueError):
    pass


def parse_monomial(expression: str) -> SignedMonomial:
    """Read ``q``, ``-q^4``, ``q^(17/4)``, ``-q^{-18}`` or ``-1``."""
    text = expression.strip().replace(" ", "")
    if not text:
        raise MonomialParseError("Provide a monomial like '-q^(17/4)'.")
    match = MONOMIAL_PATTERN.match(text)
    if not match:
        raise MonomialParseError(f"Could not parse monomial: {expression!r}")
    sign = -1 if match.group("sign") == "-" else 1
    if match.group("unit"):
        return SignedMonomial(sign, Fraction(0))
    raw = match.group("exp")
    if raw is None:
        return SignedMonomial(sign, Fraction(1))
    exp_match = EXPONENT_PATTERN.match(raw)
    if not exp_match:
        raise MonomialParseError(f"Could not parse exponent {raw!r} in {expression!r}")
    denominator = int(exp_match.group("den") or 1)
    if denominator == 0:
        raise MonomialParseError(f"Zero denominator in {expression!r}")
    return SignedMonomial(sign, Fraction(int(exp_match.group("num")), denominator))


def parse_theta_pair(expression: str) -> tuple[SignedMonomial, SignedMonomial]:
    """Read ``"a,b"`` into two monomials."""
    parts = expression.split(",")
    if len(parts) != 2:
        raise MonomialParseError(f"Expected two comma-separated monomials, got {expression!r}")
    return parse_monomial(parts[0]), parse_monomial(parts[1])


def random_monomial(
    rng: Optional[random.Random] = None,
    *,
    denominators: Sequence[int] = (1, 2, 4),
    max_exponent: int = 6,
    allow_nonpositive: bool = False,
) -> SignedMonomial:
    """Random ``±q^e`` with ``e`` on one of the given lattices."""
    rng = rng or random.Random()
    denominator = rng.choice(list(denominators))
    low = -max_exponent * denominator if allow_nonpositive else 1
    numerator = rng.randint(low, max_exponent * denominator)
    return SignedMonomial(rng.choice((1, -1)), Fraction(numerator, denominator))


def random_theta_pair(
    rng: Optional[random.Random] = None,
    *,
    denominators: Sequence[int] = (1, 2, 4),
    max_exponent: int = 6,
    allow_nonpositive: bool = True,
) -> tuple[SignedMonomial, SignedMonomial]:
    """Two monomials whose product has a positive exponent."""
    rng = rng or random.Random()
    while True:
        a = random_monomial(rng, denominators=denominators, max_exponent=max_exponent, allow_nonpositive=allow_nonpositive)
        b = random_monomial(rng, denominators=denominators, max_exponent=max_exponent)
        if a.exponent + b.exponent > 0:
            return (a, b) if rng.random() < 0.5 else (b, a)


__all__ = [
    "MonomialParseError",
    "parse_monomial",
    "parse_theta_pair",
    "random_monomial",
    "random_theta_pair",
]
