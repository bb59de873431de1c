"""Exact group law on the Mordell curve y^2 = x^3 - 48.

Points are affine with :class:`~fractions.Fraction` coordinates.  The
formulas are written for a short Weierstrass curve y^2 = x^3 + Ax + B; only
``A = 0, B = -48`` is instantiated as :data:`E48`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import RationalLike, as_rational


@dataclass(frozen=True)
class Point:
    """Affine point, or the point at infinity when ``x is None``."""

    x: Optional[Fraction]
    y: Optional[Fraction]

    @classmethod
    def affine(cls, x: RationalLike, y: RationalLike) -> "Point":
        return cls(as_rational(x), as_rational(y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "Point":
        if self.is_infinity:
            return self
        return Point(self.x, -self.y)

    def __str__(self) -> str:
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


INFINITY = Point(None, None)


class Curve:
    def __init__(self, A: int, B: int):
        self.A = A
        self.B = B
        self.discriminant = -16 * (4 * A**3 + 27 * B**2)
        if self.discriminant == 0:
            raise ValueError(f"singular curve A={A}, B={B}")
        # j = 1728 * 4A^3 / (4A^3 + 27B^2) = -1728 * 64A^3 / discriminant
        self.j_invariant = Fraction(-1728 * 64 * A**3, self.discriminant)

    def __repr__(self) -> str:
        return f"Curve(A={self.A}, B={self.B})"

    def rhs(self, x: Fraction) -> Fraction:
        return x * x * x + self.A * x + self.B

    def on_curve(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        return P.y * P.y == self.rhs(P.x)

    def point(self, x: RationalLike, y: RationalLike) -> Point:
        P = Point.affine(x, y)
        if not self.on_curve(P):
            raise ValueError(f"{P} is not on {self}")
        return P

    def add(self, P: Point, Q: Point) -> Point:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.x == Q.x:
            if P.y != Q.y or P.y == 0:
                return INFINITY
            slope = (3 * P.x * P.x + self.A) / (2 * P.y)
        else:
            slope = (Q.y - P.y) / (Q.x - P.x)
        x3 = slope * slope - P.x - Q.x
        R = Point(x3, slope * (P.x - x3) - P.y)
        assert self.on_curve(R), (P, Q)
        return R

    def double(self, P: Point) -> Point:
        return self.add(P, P)

    def scalar_mul(self, P: Point, n: int) -> Point:
        """``[n]P`` by left-to-right double-and-add; negative ``n`` allowed."""
        if n < 0:
            return self.scalar_mul(-P, -n)
        R = INFINITY
        for bit in bin(n)[2:]:
            R = self.add(R, R)
            if bit == "1":
                R = self.add(R, P)
        return R

    def multiples(self, P: Point, count: int) -> list[Point]:
        """``[[0]P, [1]P, ..., [count]P]`` by repeated addition."""
        out = [INFINITY]
        for _ in range(count):
            out.append(self.add(out[-1], P))
        return out

    # Division polynomials.  psi_2 and psi_4 carry a factor of y; psi_3 does not.

    def psi3(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        A, B = self.A, self.B
        return 3 * x**4 + 6 * A * x**2 + 12 * B * x - A * A

    def psi4_over_2y(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        A, B = self.A, self.B
        return 2 * (x**6 + 5 * A * x**4 + 20 * B * x**3 - 5 * A * A * x**2
                    - 4 * A * B * x - 8 * B * B - A**3)

    def division_poly(self, index: int, x: RationalLike, y: RationalLike) -> Fraction:
        """Evaluate psi_2, psi_3 or psi_4 at ``(x, y)``."""
        x, y = as_rational(x), as_rational(y)
        if index == 2:
            return 2 * y
        if index == 3:
            return self.psi3(x)
        if index == 4:
            return 2 * y * self.psi4_over_2y(x)
        raise ValueError(f"unsupported division polynomial index {index}")

    def psi2_psi4(self, x: RationalLike) -> Fraction:
        """psi_2 * psi_4 with y^2 eliminated through the curve equation."""
        x = as_rational(x)
        return 4 * self.rhs(x) * self.psi4_over_2y(x)

    def phi3(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        return x * self.psi3(x) ** 2 - self.psi2_psi4(x)

    def triple_x(self, x: RationalLike) -> Fraction:
        """x-coordinate of ``[3]P`` from ``x(P)`` alone."""
        x = as_rational(x)
        d = self.psi3(x)
        if d == 0:
            raise ZeroDivisionError(f"[3]P is the point at infinity for x = {x}")
        return self.phi3(x) / (d * d)


E48 = Curve(0, -48)
assert E48.discriminant == -(3**5) * 2**12 == -995328
assert E48.j_invariant == 0

G = E48.point(4, 4)


def generator() -> Point:
    return G


def on_curve(P: Point) -> bool:
    return E48.on_curve(P)


def add(P: Point, Q: Point) -> Point:
    return E48.add(P, Q)


def scalar_mul(P: Point, n: int) -> Point:
    return E48.scalar_mul(P, n)


def division_poly(index: int, x: RationalLike, y: RationalLike) -> Fraction:
    return E48.division_poly(index, x, y)


def triple_x(x: RationalLike) -> Fraction:
    return E48.triple_x(x)


def nG(n: int) -> Point:
    return E48.scalar_mul(G, n)
