"""Theta-function identities for the named continued fractions.

Each item claim states, for the i-th fraction X of a family with modulus 2K,

    1/X -+ q^((2i-1)/2) X = f(-+q^e, -+q^(K-e)) phi(+-q^(K/2)) / (f(-q^c, -q^d) psi(q^K))

with ``e = (2i-1)/2`` and ``c, d`` the lead and denominator exponents of X. The
"upper" sign takes the first of each ``-+``/``+-`` pair. The product claims
multiply the "+" forms over several indices and replace the product of the
``f(-q^c, -q^d)`` by its closed form in ``f(-q^k)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Literal, Optional

from ..cfrac import RESULT_SCALE, NamedCF
from ..series import LatticeSeries, invert, mul, scalar_mul, shift, sub, to_lattice
from ..theta import SignedMonomial, ThetaPair, f_minus_pair, theta_quotient

Sign = Literal["upper", "lower"]
SIGNS: tuple[Sign, ...] = ("upper", "lower")

ROMAN = ("i", "ii", "iii", "iv", "v", "vi", "vii")
THEOREM_TAGS = {"A": "T31", "B": "T32", "C": "T33"}


class UnknownTheoremError(KeyError):
    pass


class TheoremItemError(ValueError):
    """A theorem item or sign case that cannot be built."""


@dataclass(frozen=True)
class Theorem3Item:
    claim_id: str
    family: str
    indices: tuple[int, ...]
    product: bool = False
    denominator: Optional[tuple[int, int]] = None
    # f(-q^k)^power factors replacing the product of f(-q^c, -q^d) in product claims
    closed_numerator: tuple[tuple[int, int], ...] = ()
    closed_denominator: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if not self.indices:
            raise TheoremItemError(f"{self.claim_id} names no fraction indices.")

    @property
    def signs(self) -> tuple[Sign, ...]:
        return ("lower",) if self.product else SIGNS


def _items() -> dict[str, Theorem3Item]:
    items: dict[str, Theorem3Item] = {}
    for family, tag in THEOREM_TAGS.items():
        count = (NamedCF(family, 1).k - 1) // 2
        for index in range(1, count + 1):
            claim_id = f"{tag}.{ROMAN[index - 1]}"
            items[claim_id] = Theorem3Item(claim_id, family, (index,))
    items["T31.v"] = Theorem3Item(
        "T31.v",
        "A",
        (1, 3, 4),
        product=True,
        closed_numerator=((3, 1),),
        closed_denominator=((1, 1), (9, 3)),
    )
    items["T32.vii"] = Theorem3Item(
        "T32.vii",
        "B",
        (1, 2, 3, 4, 5, 6),
        product=True,
        closed_denominator=((1, 1), (13, 5)),
    )
    items["T32.iii-printed"] = Theorem3Item("T32.iii-printed", "B", (3,), denominator=(4, 8))
    return items


THEOREM3_ITEMS: dict[str, Theorem3Item] = _items()


def lookup_item(claim_id: str) -> Theorem3Item:
    try:
        return THEOREM3_ITEMS[claim_id]
    except KeyError as exc:
        raise UnknownTheoremError(claim_id) from exc


def _lhs_factor(entry: NamedCF, sign: int, order: int) -> LatticeSeries:
    """``1/X + sign * q^e * X`` on the half lattice."""
    x = entry.quotient(order, scale=RESULT_SCALE)
    e = Fraction(2 * entry.index - 1, 2)
    return invert(x) + scalar_mul(shift(x, to_lattice(e, RESULT_SCALE)), sign)


def _f_minus_pairs(factors: tuple[tuple[int, int], ...]) -> list[ThetaPair]:
    return [f_minus_pair(k) for k, power in factors for _ in range(power)]


def theorem3_sides(claim_id: str, sign: Sign, order: int) -> tuple[LatticeSeries, LatticeSeries]:
    """Both sides of a theorem item at ``D = 2`` through lattice index ``order``."""
    item = lookup_item(claim_id)
    if sign not in item.signs:
        raise TheoremItemError(f"{claim_id} has no {sign!r} sign case.")
    s = -1 if sign == "upper" else 1
    first = NamedCF(item.family, item.indices[0])
    k = first.k
    half = Fraction(k, 2)
    phi_arg = SignedMonomial(-s, half)
    psi_args = (SignedMonomial(1, k), SignedMonomial(1, 3 * k))

    factors: list[LatticeSeries] = []
    numerators: list[ThetaPair] = []
    denominators: list[ThetaPair] = []
    for index in item.indices:
        entry = NamedCF(item.family, index)
        factors.append(_lhs_factor(entry, s, order))
        e = Fraction(2 * index - 1, 2)
        numerators.append((SignedMonomial(s, e), SignedMonomial(s, k - e)))
        numerators.append((phi_arg, phi_arg))
        denominators.append(psi_args)
        if not item.product:
            c, d = item.denominator or (entry.lead_exponent, entry.denominator_exponent)
            denominators.append((SignedMonomial(-1, c), SignedMonomial(-1, d)))
    numerators.extend(_f_minus_pairs(item.closed_numerator))
    denominators.extend(_f_minus_pairs(item.closed_denominator))
    rhs = theta_quotient(numerators, denominators, order, scale=RESULT_SCALE)
    return reduce(mul, factors), rhs


def theorem3_residual(claim_id: str, sign: Sign, order: int) -> LatticeSeries:
    """LHS - RHS; the zero series through ``order`` when the identity holds."""
    lhs, rhs = theorem3_sides(claim_id, sign, order)
    return sub(lhs, rhs)


__all__ = [
    "SIGNS",
    "THEOREM3_ITEMS",
    "Sign",
    "Theorem3Item",
    "TheoremItemError",
    "UnknownTheoremError",
    "lookup_item",
    "theorem3_residual",
    "theorem3_sides",
]
