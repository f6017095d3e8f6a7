"""q-Pochhammer products, Ramanujan theta functions and the proof identities built on them."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .series import (
    ExponentLike,
    LatticeSeries,
    SeriesError,
    as_exponent,
    expand,
    monomial,
    mul,
    shift,
    sub,
    to_lattice,
)

logger = logging.getLogger(__name__)

HELPER_IDS: tuple[str, ...] = ("E20A", "E21", "E22", "E26", "E27", "E31", "E38", "E40")


class ThetaArgumentError(SeriesError):
    """Theta arguments violate |ab| < 1 or leave the lattice."""


class PochhammerError(SeriesError):
    """Invalid Pochhammer data or a vanishing denominator."""


@dataclass(frozen=True)
class SignedMonomial:
    """``sign * q^exponent`` with a rational exponent."""

    sign: int
    exponent: Fraction

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ThetaArgumentError(f"Monomial sign must be +1 or -1, got {self.sign!r}.")
        object.__setattr__(self, "exponent", as_exponent(self.exponent))

    @classmethod
    def q(cls, exponent: ExponentLike, sign: int = 1) -> "SignedMonomial":
        return cls(sign, as_exponent(exponent))

    def __mul__(self, other: "SignedMonomial") -> "SignedMonomial":
        return SignedMonomial(self.sign * other.sign, self.exponent + other.exponent)

    def __truediv__(self, other: "SignedMonomial") -> "SignedMonomial":
        return SignedMonomial(self.sign * other.sign, self.exponent - other.exponent)

    def __pow__(self, power: int) -> "SignedMonomial":
        return SignedMonomial(self.sign ** (power % 2), self.exponent * power)

    def __neg__(self) -> "SignedMonomial":
        return SignedMonomial(-self.sign, self.exponent)

    def series(self, scale: int, order: int) -> LatticeSeries:
        return monomial(self.sign, self.exponent, scale, order)

    def __str__(self) -> str:
        prefix = "-" if self.sign < 0 else ""
        if self.exponent == 0:
            return f"{prefix}1"
        if self.exponent == 1:
            return f"{prefix}q"
        return f"{prefix}q^({self.exponent})"


@dataclass(frozen=True)
class PochhammerSpec:
    """``prod_j (1 - sign * base_sign^j * q^(start + j*modulus))^power``.

    ``sign = -1`` gives the ``(-q^start; q^modulus)`` products of the triple
    product; ``base_sign = -1`` a negative base such as ``(x; -q^m)``.
    """

    start: Fraction
    modulus: Fraction
    power: int = 1
    sign: int = 1
    base_sign: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", as_exponent(self.start))
        object.__setattr__(self, "modulus", as_exponent(self.modulus))
        if self.modulus <= 0:
            raise PochhammerError(f"Pochhammer modulus must be positive, got {self.modulus}.")
        if self.power < 1:
            raise PochhammerError(f"Pochhammer power must be a positive integer, got {self.power}.")
        if self.sign not in (1, -1) or self.base_sign not in (1, -1):
            raise PochhammerError("Pochhammer signs must be +1 or -1.")


@dataclass
class _Accumulator:
    """Working state of a product of binomials ``(1 - c q^e)``."""

    scale: int
    sign: int = 1
    offset: int = 0
    constant: int = 1
    vanishes: bool = False
    numerator: list[tuple[int, int]] = field(default_factory=list)
    denominator: list[tuple[int, int]] = field(default_factory=list)

    def absorb(self, exponent: int, coeff: int, times: int, *, inverse: bool) -> None:
        if exponent == 0:
            if coeff == 1:
                if inverse:
                    raise PochhammerError("Denominator contains the vanishing factor (1 - 1).")
                self.vanishes = True
                return
            if inverse:
                raise PochhammerError("Denominator factor (1 + 1) = 2 is not a unit.")
            self.constant *= 2**times
            return
        target = self.denominator if inverse else self.numerator
        if exponent < 0:
            # (1 - c q^e) = -c q^e (1 - c q^-e) for c = +-1
            if times % 2:
                self.sign *= -coeff
            self.offset += (-exponent if inverse else exponent) * times
            exponent = -exponent
        target.extend([(exponent, coeff)] * times)


def _collect(
    acc: _Accumulator,
    specs: Iterable[PochhammerSpec],
    *,
    inverse: bool,
) -> list[tuple[PochhammerSpec, int, int]]:
    """Absorb every nonpositive factor; return the positive tails still to expand."""
    tails = []
    for spec in specs:
        start = to_lattice(spec.start, acc.scale)
        step = to_lattice(spec.modulus, acc.scale)
        j = 0
        while start + j * step <= 0:
            coeff = spec.sign * spec.base_sign**j
            acc.absorb(start + j * step, coeff, spec.power, inverse=inverse)
            j += 1
        tails.append((spec, start, j))
    return tails


def _apply_binomial(values: list[int], exponent: int, coeff: int, *, inverse: bool) -> None:
    """Multiply (or divide) the dense window in place by ``(1 - coeff q^exponent)``."""
    width = len(values) - 1
    if exponent > width:
        return
    if inverse:
        for i in range(exponent, width + 1):
            values[i] += coeff * values[i - exponent]
    else:
        for i in range(width, exponent - 1, -1):
            values[i] -= coeff * values[i - exponent]


def pochhammer_quotient(
    numerators: Sequence[PochhammerSpec],
    denominators: Sequence[PochhammerSpec],
    scale: int,
    order: int,
) -> LatticeSeries:
    """Exact ratio of Pochhammer products truncated at lattice index ``order``.

    Factors are applied one at a time in place, so the cost is linear in the
    number of factors that reach the truncation window.
    """
    acc = _Accumulator(scale=scale)
    num_tails = _collect(acc, numerators, inverse=False)
    den_tails = _collect(acc, denominators, inverse=True)
    if acc.vanishes:
        return LatticeSeries.zero(scale, order)
    width = order - acc.offset
    if width < 0:
        return LatticeSeries.zero(scale, order)
    values = [0] * (width + 1)
    values[0] = acc.sign * acc.constant

    for tails, inverse in ((num_tails, False), (den_tails, True)):
        for spec, start, j in tails:
            step = to_lattice(spec.modulus, scale)
            while start + j * step <= width:
                exponent = start + j * step
                coeff = spec.sign * spec.base_sign**j
                for _ in range(spec.power):
                    _apply_binomial(values, exponent, coeff, inverse=inverse)
                j += 1
    for exponent, coeff in acc.numerator:
        _apply_binomial(values, exponent, coeff, inverse=False)
    for exponent, coeff in acc.denominator:
        _apply_binomial(values, exponent, coeff, inverse=True)
    return LatticeSeries.from_coeffs(values, scale=scale, min_exp=acc.offset, trunc=order)


def pochhammer(spec: PochhammerSpec, scale: int, order: int) -> LatticeSeries:
    """``(±q^start; ±q^modulus)_inf^power``; a factor ``(1 - 1)`` makes it zero."""
    return pochhammer_quotient((spec,), (), scale, order)


def pm_specs(a: ExponentLike, modulus: ExponentLike, power: int = 1) -> tuple[PochhammerSpec, PochhammerSpec]:
    a_exp = as_exponent(a)
    m_exp = as_exponent(modulus)
    if not 0 < a_exp < m_exp:
        raise PochhammerError(f"(q^±a; q^M) needs 0 < a < M, got a={a_exp}, M={m_exp}.")
    return (PochhammerSpec(a_exp, m_exp, power), PochhammerSpec(m_exp - a_exp, m_exp, power))


def pm_pochhammer(a: ExponentLike, modulus: ExponentLike, scale: int, order: int) -> LatticeSeries:
    """``(q^a; q^M)(q^(M-a); q^M)``; squares the single factor when ``a = M/2``."""
    return pochhammer_quotient(pm_specs(a, modulus), (), scale, order)


def _check_theta_args(a: SignedMonomial, b: SignedMonomial) -> None:
    if a.exponent + b.exponent <= 0:
        raise ThetaArgumentError(
            f"f({a}, {b}) needs |ab| < 1, i.e. a positive exponent sum."
        )


def theta_sum(a: SignedMonomial, b: SignedMonomial, order: int, *, scale: int = 1) -> LatticeSeries:
    """Bilateral sum ``f(a, b) = sum_n a^(n(n+1)/2) b^(n(n-1)/2)`` truncated at ``order``."""
    _check_theta_args(a, b)
    alpha = to_lattice(a.exponent, scale)
    beta = to_lattice(b.exponent, scale)

    def term(n: int) -> tuple[int, int]:
        up = n * (n + 1) // 2
        down = n * (n - 1) // 2
        sign = (a.sign if up % 2 else 1) * (b.sign if down % 2 else 1)
        return alpha * up + beta * down, sign

    bucket: dict[int, int] = {}
    for direction in (1, -1):
        n = 0 if direction == 1 else -1
        while True:
            exponent, sign = term(n)
            following, _ = term(n + direction)
            if exponent > order and following > exponent:
                break
            if exponent <= order:
                bucket[exponent] = bucket.get(exponent, 0) + sign
            n += direction
    terms = {index: value for index, value in bucket.items() if value}
    if not terms:
        return LatticeSeries.zero(scale, order)
    low = min(terms)
    values = [0] * (order - low + 1)
    for index, value in terms.items():
        values[index - low] = value
    return LatticeSeries.from_coeffs(values, scale=scale, min_exp=low, trunc=order)


def theta_specs(a: SignedMonomial, b: SignedMonomial, power: int = 1) -> tuple[PochhammerSpec, ...]:
    """Triple-product factors ``(-a; ab)(-b; ab)(ab; ab)`` of ``f(a, b)``."""
    _check_theta_args(a, b)
    ab = a * b
    return (
        PochhammerSpec(a.exponent, ab.exponent, power, sign=-a.sign, base_sign=ab.sign),
        PochhammerSpec(b.exponent, ab.exponent, power, sign=-b.sign, base_sign=ab.sign),
        PochhammerSpec(ab.exponent, ab.exponent, power, sign=ab.sign, base_sign=ab.sign),
    )


def theta_product(a: SignedMonomial, b: SignedMonomial, order: int, *, scale: int = 1) -> LatticeSeries:
    """``f(a, b)`` through the Jacobi triple product."""
    return pochhammer_quotient(theta_specs(a, b), (), scale, order)


ThetaPair = tuple[SignedMonomial, SignedMonomial]


def theta_quotient(
    numerators: Sequence[ThetaPair],
    denominators: Sequence[ThetaPair],
    order: int,
    *,
    scale: int = 1,
) -> LatticeSeries:
    """Ratio of theta functions evaluated as one Pochhammer quotient."""
    top = [spec for a, b in numerators for spec in theta_specs(a, b)]
    bottom = [spec for a, b in denominators for spec in theta_specs(a, b)]
    return pochhammer_quotient(top, bottom, scale, order)


def _positive(k: ExponentLike) -> Fraction:
    value = as_exponent(k)
    if value <= 0:
        raise ThetaArgumentError(f"Theta specializations need k > 0, got {value}.")
    return value


def phi_pair(sign: int, k: ExponentLike) -> ThetaPair:
    arg = SignedMonomial(sign, _positive(k))
    return arg, arg


def psi_pair(k: ExponentLike, sign: int = 1) -> ThetaPair:
    value = _positive(k)
    return SignedMonomial(sign, value), SignedMonomial(sign, 3 * value)


def f_minus_pair(k: ExponentLike) -> ThetaPair:
    value = _positive(k)
    return SignedMonomial(-1, value), SignedMonomial(-1, 2 * value)


def phi(sign: int, k: ExponentLike, order: int, *, scale: int = 1) -> LatticeSeries:
    """``phi(±q^k) = f(±q^k, ±q^k)``."""
    a, b = phi_pair(sign, k)
    return theta_sum(a, b, order, scale=scale)


def psi(k: ExponentLike, order: int, *, scale: int = 1) -> LatticeSeries:
    """``psi(q^k) = f(q^k, q^3k)``."""
    a, b = psi_pair(k)
    return theta_sum(a, b, order, scale=scale)


def f_minus(k: ExponentLike, order: int, *, scale: int = 1) -> LatticeSeries:
    """``f(-q^k) = (q^k; q^k)_inf``."""
    value = _positive(k)
    return pochhammer(PochhammerSpec(value, value), scale, order)


def chi(k: ExponentLike, order: int, *, scale: int = 1) -> LatticeSeries:
    """``chi(q^k) = (-q^k; q^2k)_inf``."""
    value = _positive(k)
    return pochhammer(PochhammerSpec(value, 2 * value, sign=-1), scale, order)


def _f(a: SignedMonomial, b: SignedMonomial, scale: int) -> Callable[[int], LatticeSeries]:
    return lambda order: theta_sum(a, b, order, scale=scale)


def _scaled(coefficient: SignedMonomial, series: LatticeSeries, scale: int) -> LatticeSeries:
    product = shift(series, to_lattice(coefficient.exponent, scale))
    return product if coefficient.sign > 0 else -product


def _sides_e20a(args: Sequence[SignedMonomial], scale: int, order: int) -> tuple[LatticeSeries, LatticeSeries]:
    a, b = args
    lhs = theta_sum(a, b, order, scale=scale)

    def rhs(n: int) -> LatticeSeries:
        first = theta_sum(a**3 * b, a * b**3, n, scale=scale)
        second = _scaled(a, theta_sum(b / a, a**5 * b**3, n, scale=scale), scale)
        return first + second

    return lhs, expand(rhs, order)


def _sides_e26(args: Sequence[SignedMonomial], scale: int, order: int) -> tuple[LatticeSeries, LatticeSeries]:
    a, b = args
    ab = a * b

    def lhs(n: int) -> LatticeSeries:
        return mul(theta_sum(a, a * b**2, n, scale=scale), theta_sum(b, a**2 * b, n, scale=scale))

    def rhs(n: int) -> LatticeSeries:
        return mul(theta_sum(a, b, n, scale=scale), theta_sum(ab, ab**3, n, scale=scale))

    return expand(lhs, order), expand(rhs, order)


def _sides_e27(args: Sequence[SignedMonomial], scale: int, order: int) -> tuple[LatticeSeries, LatticeSeries]:
    a, b = args
    minus_ab = -(a * b)

    def lhs(n: int) -> LatticeSeries:
        return mul(theta_sum(a, b, n, scale=scale), theta_sum(-a, -b, n, scale=scale))

    def rhs(n: int) -> LatticeSeries:
        return mul(
            theta_sum(-(a**2), -(b**2), n, scale=scale),
            theta_sum(minus_ab, minus_ab, n, scale=scale),
        )

    return expand(lhs, order), expand(rhs, order)


def _sides_e31(args: Sequence[SignedMonomial], scale: int, order: int) -> tuple[LatticeSeries, LatticeSeries]:
    a, b = args
    ab = a * b
    a2b2 = ab**2

    def lhs(n: int) -> LatticeSeries:
        base = theta_sum(a, b, n, scale=scale)
        return mul(base, base)

    def rhs(n: int) -> LatticeSeries:
        first = mul(theta_sum(a**2, b**2, n, scale=scale), theta_sum(ab, ab, n, scale=scale))
        second = mul(theta_sum(b / a, a**3 * b, n, scale=scale), theta_sum(a2b2, a2b2**3, n, scale=scale))
        return first + 2 * _scaled(a, second, scale)

    return expand(lhs, order), expand(rhs, order)


def _quarter_split(sign: int, scale: int, order: int) -> tuple[LatticeSeries, LatticeSeries]:
    """``f(sign q^(1/4), -sign q^(17/4)) = f(-q^5, -q^13) + sign q^(1/4) f(-q^4, -q^14)``."""
    lhs = theta_sum(SignedMonomial(sign, Fraction(1, 4)), SignedMonomial(-sign, Fraction(17, 4)), order, scale=scale)
    even = theta_product(SignedMonomial(-1, 5), SignedMonomial(-1, 13), order, scale=scale)
    odd = theta_product(SignedMonomial(-1, 4), SignedMonomial(-1, 14), order, scale=scale)
    return lhs, even + _scaled(SignedMonomial(sign, Fraction(1, 4)), odd, scale)


def _sides_e21(_: Sequence[SignedMonomial], scale: int, order: int) -> tuple[LatticeSeries, LatticeSeries]:
    return _quarter_split(-1, scale, order)


def _sides_e22(_: Sequence[SignedMonomial], scale: int, order: int) -> tuple[LatticeSeries, LatticeSeries]:
    return _quarter_split(1, scale, order)


def _sides_e38(_: Sequence[SignedMonomial], scale: int, order: int) -> tuple[LatticeSeries, LatticeSeries]:
    pairs = [(SignedMonomial(-1, i), SignedMonomial(-1, 9 - i)) for i in (1, 2, 4)]
    lhs = theta_quotient(pairs, (), order, scale=scale)
    top = (
        PochhammerSpec(1, 1),
        PochhammerSpec(9, 9, power=3),
    )
    rhs = pochhammer_quotient(top, (PochhammerSpec(3, 3),), scale, order)
    return lhs, rhs


def _sides_e40(_: Sequence[SignedMonomial], scale: int, order: int) -> tuple[LatticeSeries, LatticeSeries]:
    pairs = [(SignedMonomial(-1, i), SignedMonomial(-1, 13 - i)) for i in range(1, 7)]
    lhs = theta_quotient(pairs, (), order, scale=scale)
    rhs = pochhammer_quotient((PochhammerSpec(1, 1), PochhammerSpec(13, 13, power=5)), (), scale, order)
    return lhs, rhs


_HELPERS: Mapping[str, Callable[[Sequence[SignedMonomial], int, int], tuple[LatticeSeries, LatticeSeries]]] = {
    "E20A": _sides_e20a,
    "E21": _sides_e21,
    "E22": _sides_e22,
    "E26": _sides_e26,
    "E27": _sides_e27,
    "E31": _sides_e31,
    "E38": _sides_e38,
    "E40": _sides_e40,
}

HELPER_ARITY = {"E20A": 2, "E21": 0, "E22": 0, "E26": 2, "E27": 2, "E31": 2, "E38": 0, "E40": 0}


def helper_arguments_admissible(identity: str, args: Sequence[SignedMonomial]) -> bool:
    """True when every theta function the identity touches has a positive exponent sum."""
    if HELPER_ARITY.get(identity) == 0:
        return True
    a, b = args
    checks = {
        "E20A": [(a, b), (a**3 * b, a * b**3), (b / a, a**5 * b**3)],
        "E26": [(a, a * b**2), (b, a**2 * b), (a, b), (a * b, (a * b) ** 3)],
        "E27": [(a, b), (-(a**2), -(b**2))],
        "E31": [(a, b), (a**2, b**2), (b / a, a**3 * b)],
    }[identity]
    return all(x.exponent + y.exponent > 0 for x, y in checks)


def helper_sides(
    identity: str,
    args: Sequence[SignedMonomial],
    order: int,
    *,
    scale: int = 1,
) -> tuple[LatticeSeries, LatticeSeries]:
    """Both sides of a helper identity, each known through ``order``."""
    try:
        builder = _HELPERS[identity]
    except KeyError as exc:
        raise ThetaArgumentError(f"Unknown helper identity {identity!r}.") from exc
    if len(args) != HELPER_ARITY[identity]:
        raise ThetaArgumentError(
            f"{identity} takes {HELPER_ARITY[identity]} arguments, got {len(args)}."
        )
    if not helper_arguments_admissible(identity, args):
        raise ThetaArgumentError(f"Arguments {', '.join(map(str, args))} are not admissible for {identity}.")
    for arg in args:
        to_lattice(arg.exponent, scale)
    logger.debug("Building %s(%s) at scale %s through %s.", identity, ", ".join(map(str, args)), scale, order)
    return builder(args, scale, order)


def helper_residual(
    identity: str,
    args: Sequence[SignedMonomial],
    order: int,
    *,
    scale: int = 1,
) -> LatticeSeries:
    """LHS - RHS of a helper identity; zero through ``order`` when the identity holds."""
    lhs, rhs = helper_sides(identity, args, order, scale=scale)
    return sub(lhs, rhs)


__all__ = [
    "HELPER_ARITY",
    "HELPER_IDS",
    "PochhammerError",
    "PochhammerSpec",
    "SignedMonomial",
    "ThetaArgumentError",
    "ThetaPair",
    "chi",
    "f_minus",
    "f_minus_pair",
    "helper_arguments_admissible",
    "helper_residual",
    "helper_sides",
    "phi",
    "phi_pair",
    "pm_pochhammer",
    "pm_specs",
    "pochhammer",
    "pochhammer_quotient",
    "psi",
    "psi_pair",
    "theta_product",
    "theta_quotient",
    "theta_specs",
    "theta_sum",
]
