"""Certified height bounds and the case-bounding chain.

Every real quantity is carried as a pair of exact rationals, so "directed
rounding" is exact: lower bounds are true lower bounds and upper bounds are
true upper bounds, with no floating point anywhere on a decision path.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import as_rational, ceil_sqrt, RationalLike
from .curve import E48, G, Point

# Silverman's difference bound for j = 0 curves with this discriminant,
# taken as given: -2.13 < hhat(P) - h(x(P))/2 < 2.222.
SILVERMAN_LOWER = Fraction("2.13")
SILVERMAN_UPPER = Fraction("2.222")
HHAT_G_CLAIM = Fraction("0.25")
LOWER_BOUND_SLACK = Fraction("4.444")

_LOG_TERMS = 80
_MIN_SLACK_BITS = 30


@dataclass(frozen=True)
class HeightBracket:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"empty bracket [{self.lower}, {self.upper}]")

    def __contains__(self, value: RationalLike) -> bool:
        return self.lower <= value <= self.upper

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def __str__(self) -> str:
        return f"[{float(self.lower):.6f}, {float(self.upper):.6f}]"


def _log_one_minus_inv(t: Fraction, terms: int) -> HeightBracket:
    """Enclosure of -ln(1 - t) = sum t^k / k for 0 < t < 1."""
    s = Fraction(0)
    power = Fraction(1)
    for k in range(1, terms + 1):
        power *= t
        s += power / k
    tail = power * t / ((terms + 1) * (1 - t))
    return HeightBracket(s, s + tail)


def _certified_logs() -> tuple[HeightBracket, HeightBracket]:
    ln2 = _log_one_minus_inv(Fraction(1, 2), _LOG_TERMS)
    ln3_2 = _log_one_minus_inv(Fraction(1, 3), _LOG_TERMS)
    ln3 = HeightBracket(ln2.lower + ln3_2.lower, ln2.upper + ln3_2.upper)
    for b in (ln2, ln3):
        assert b.width < Fraction(1, 2**_MIN_SLACK_BITS)
    return ln2, ln3


LN2, LN3 = _certified_logs()


def naive_height(x: RationalLike) -> HeightBracket:
    """Bracket for ln max(|num|, den) from the bit length of the larger side."""
    x = as_rational(x)
    L = max(abs(x.numerator), x.denominator).bit_length()
    return HeightBracket((L - 1) * LN2.lower, L * LN2.upper)


def canonical_bracket(P: Point) -> HeightBracket:
    """Bracket for the canonical height of ``P`` via the Silverman bound."""
    if P.is_infinity:
        return HeightBracket(Fraction(0), Fraction(0))
    h = naive_height(P.x)
    return HeightBracket(h.lower / 2 - SILVERMAN_LOWER, h.upper / 2 + SILVERMAN_UPPER)


def generator_interval(n: int, P: Point | None = None) -> HeightBracket:
    """Interval for hhat(G) implied by the bracket on ``[n]G``."""
    if P is None:
        P = E48.scalar_mul(G, n)
    b = canonical_bracket(P)
    return HeightBracket(b.lower / (n * n), b.upper / (n * n))


def generator_intervals(max_n: int) -> list[HeightBracket]:
    pts = E48.multiples(G, max_n)
    return [generator_interval(n, pts[n]) for n in range(1, max_n + 1)]


def common_intersection(brackets: list[HeightBracket]) -> HeightBracket | None:
    lo = max(b.lower for b in brackets)
    hi = min(b.upper for b in brackets)
    return HeightBracket(lo, hi) if lo <= hi else None


def hhat_generator_lower(multiple: int = 25) -> Fraction:
    """Certified lower bound for hhat(G) read off ``[multiple]G``.

    Raises ``ArithmeticError`` if the bound does not exceed 1/4.
    """
    bound = generator_interval(multiple).lower
    if not bound > HHAT_G_CLAIM:
        raise ArithmeticError(f"hhat(G) lower bound {float(bound)} does not exceed 0.25")
    return bound


def n_squared_real_bound(b: int) -> Fraction:
    """Certified upper bound for 2((36.5b + 30.5) ln 3 + 4.444)."""
    e = Fraction(73, 2) * b + Fraction(61, 2)
    return 2 * (e * LN3.upper + LOWER_BOUND_SLACK)


def n_squared_bound(b: int) -> int:
    """Integer bound ``81b + 76`` on N^2, checked against the real chain."""
    if b < 0:
        raise ValueError("b must be non-negative")
    bound = 81 * b + 76
    if not n_squared_real_bound(b) < bound:
        raise ArithmeticError(f"rounding to {bound} is not justified at b={b}")
    return bound


@dataclass(frozen=True)
class CaseList:
    b: int
    candidates: tuple[int, ...]


def case_list(b: int) -> CaseList:
    """All N >= 1 with 3^b | N and 9^b <= N^2 < 81b + 76."""
    bound = n_squared_bound(b)
    step = 3**b
    lo = 9**b
    found = []
    N = step
    while N * N < bound:
        if N * N >= lo:
            found.append(N)
        N += step
    return CaseList(b, tuple(found))


def max_b() -> int:
    """Smallest b for which the case list is empty; it stays empty after."""
    b = 0
    while 9**b < 81 * b + 76:
        b += 1
    return b


def _ceil_power_of_sqrt3(e: int) -> int:
    """ceil(3^(e/2)) for a non-negative integer ``e``."""
    if e % 2 == 0:
        return 3 ** (e // 2)
    return ceil_sqrt(3**e)


def bound_chain(b: int) -> tuple[int, int]:
    """(ceil 3^(37.5b+30), ceil 3^(37.5b+31.5)) as exact integers."""
    if b < 0:
        raise ValueError("b must be non-negative")
    return _ceil_power_of_sqrt3(75 * b + 60), _ceil_power_of_sqrt3(75 * b + 63)
