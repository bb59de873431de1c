"""Exact integer and rational primitives.

Rationals are :class:`fractions.Fraction` values, which are always held in
lowest terms with a positive denominator.  Valuations are exact integers;
``v_p(0)`` is ``math.inf``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Union

Rational = Fraction
RationalLike = Union[int, Fraction]

INFINITY = math.inf


def normalize(num: int, den: int) -> Fraction:
    """Reduced representative of ``num/den`` with ``den > 0``."""
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(num, den)


def as_rational(q: RationalLike) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    raise TypeError(f"expected int or Fraction, got {type(q).__name__}")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def multiplicity(n: int, p: int) -> int:
    """Exponent of ``p`` in the nonzero integer ``n``."""
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def v_p(q: RationalLike, p: int) -> Union[int, float]:
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = as_rational(q)
    if q == 0:
        return INFINITY
    return multiplicity(q.numerator, p) - multiplicity(q.denominator, p)


def v3(q: RationalLike) -> Union[int, float]:
    return v_p(q, 3)


def abs3_log(q: RationalLike) -> int:
    """Exponent ``k`` with ``|q|_3 = 3**k``."""
    q = as_rational(q)
    if q == 0:
        raise ValueError("|0|_3 has no finite exponent")
    return -v3(q)


def integer_cube_root(n: int) -> int:
    """Floor of the real cube root of ``n`` (rounds toward minus infinity)."""
    if n < 0:
        r = integer_cube_root(-n)
        return -r if r * r * r == -n else -r - 1
    if n < 2:
        return n
    # Newton from above; the bit-length start overestimates the root
    r = 1 << ((n.bit_length() + 2) // 3)
    while True:
        s = (2 * r + n // (r * r)) // 3
        if s >= r:
            break
        r = s
    while r * r * r > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def perfect_cube_root(n: int) -> Optional[int]:
    r = integer_cube_root(n)
    return r if r * r * r == n else None


def perfect_square_root(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1
