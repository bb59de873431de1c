import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cubic48.arith import (
    abs3_log,
    ceil_sqrt,
    integer_cube_root,
    normalize,
    perfect_cube_root,
    perfect_square_root,
    v3,
    v_p,
)


@pytest.mark.parametrize("num, den, expected", [
    (292, 36, Fraction(73, 9)),
    (-4, -1, Fraction(4)),
    (0, 7, Fraction(0)),
])
def test_normalize(num, den, expected):
    q = normalize(num, den)
    assert q == expected
    assert q.denominator > 0 and math.gcd(q.numerator, q.denominator) == 1


def test_normalize_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        normalize(1, 0)


def test_normalize_zero_is_0_over_1():
    q = normalize(0, -5)
    assert (q.numerator, q.denominator) == (0, 1)


@given(st.integers(-10**30, 10**30), st.integers(1, 10**30), st.integers(-10**6, 10**6).filter(bool))
def test_normalize_scale_invariant_and_idempotent(n, d, k):
    q = normalize(n, d)
    assert normalize(k * n, k * d) == q
    assert normalize(q.numerator, q.denominator) == q


@pytest.mark.parametrize("q, expected", [
    (Fraction(73, 9), -2),
    (Fraction(12, 5), 1),
    (Fraction(0), math.inf),
])
def test_v3(q, expected):
    assert v3(q) == expected


def test_v_p_other_primes():
    assert v_p(Fraction(48, 7), 2) == 4
    assert v_p(Fraction(3, 49), 7) == -2


def test_v_p_rejects_composite():
    with pytest.raises(ValueError):
        v_p(Fraction(9), 9)


@pytest.mark.parametrize("q, expected", [
    (Fraction(73, 9), 2),
    (Fraction(28), 0),
    (Fraction(4, 81), 4),
])
def test_abs3_log(q, expected):
    assert abs3_log(q) == expected
    assert isinstance(abs3_log(q), int)


def test_abs3_log_rejects_zero():
    with pytest.raises(ValueError):
        abs3_log(Fraction(0))


nonzero = st.fractions().filter(lambda q: q != 0)


@given(nonzero, nonzero)
def test_valuation_laws(a, b):
    assert v3(a * b) == v3(a) + v3(b)
    if a + b != 0:
        assert v3(a + b) >= min(v3(a), v3(b))
        if v3(a) != v3(b):
            assert v3(a + b) == min(v3(a), v3(b))


@pytest.mark.parametrize("n, expected", [(-343, -7), (389017, 73), (10, None), (0, 0), (-1, -1)])
def test_perfect_cube_root(n, expected):
    assert perfect_cube_root(n) == expected


@pytest.mark.parametrize("n, expected", [(1369, 37), (1416100, 1190), (2, None), (-4, None), (0, 0)])
def test_perfect_square_root(n, expected):
    assert perfect_square_root(n) == expected


def test_cube_root_exhaustive():
    assert all(perfect_cube_root(r**3) == r for r in range(-10**6, 10**6 + 1))


def test_square_root_exhaustive():
    assert all(perfect_square_root(r * r) == r for r in range(10**6 + 1))


@given(st.integers(-10**60, 10**60))
def test_integer_cube_root_is_floor(n):
    r = integer_cube_root(n)
    assert r**3 <= n < (r + 1) ** 3


@given(st.integers(1, 10**60))
def test_near_cubes_are_rejected(r):
    assert perfect_cube_root(r**3 + 1) is None
    assert perfect_cube_root(r**3 - 1) is None or r == 1


@given(st.integers(0, 10**50))
def test_ceil_sqrt(n):
    r = ceil_sqrt(n)
    assert r * r >= n and (r == 0 or (r - 1) ** 2 < n)
