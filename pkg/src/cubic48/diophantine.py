"""The cubic Z1^3 + Z2^3 + 9 Z3^3 = 0, its map to the curve, and case elimination."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import RationalLike, abs3_log, as_rational, perfect_cube_root, perfect_square_root, v3
from .curve import E48, G, Point


class StructureError(ArithmeticError):
    """A proven structural identity failed on concrete data."""


def cubic_eval(z1: int, z2: int, z3: int) -> int:
    return z1**3 + z2**3 + 9 * z3**3


def normalize_triple(z1: int, z2: int, z3: int) -> tuple[int, int, int]:
    """Primitive representative with z1 + z2 > 0 (or z1 > 0 when z1 + z2 = 0)."""
    g = math.gcd(z1, z2, z3)
    if g == 0:
        raise ValueError("the zero triple is not a projective point")
    z1, z2, z3 = z1 // g, z2 // g, z3 // g
    s = z1 + z2
    if s < 0 or (s == 0 and z1 < 0):
        z1, z2, z3 = -z1, -z2, -z3
    return z1, z2, z3


@dataclass(frozen=True, order=True)
class CubicSolution:
    z1: int
    z2: int
    z3: int

    def __post_init__(self):
        t = (self.z1, self.z2, self.z3)
        if cubic_eval(*t) != 0:
            raise ValueError(f"{t} does not satisfy the cubic")
        if normalize_triple(*t) != t:
            raise ValueError(f"{t} is not primitive and normalized")

    @classmethod
    def from_any(cls, z1: int, z2: int, z3: int) -> "CubicSolution":
        return cls(*normalize_triple(z1, z2, z3))

    def swapped(self) -> "CubicSolution":
        return CubicSolution.from_any(self.z2, self.z1, self.z3)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.z1, self.z2, self.z3)

    def __str__(self) -> str:
        return f"[{self.z1}:{self.z2}:{self.z3}]"


def to_curve(sol: CubicSolution) -> Point:
    """(x, y) = (-12 z3, 12 (z1 - z2)) / (z1 + z2)."""
    s = sol.z1 + sol.z2
    if s == 0:
        raise ValueError(f"{sol} maps to the point at infinity")
    return E48.point(Fraction(-12 * sol.z3, s), Fraction(12 * (sol.z1 - sol.z2), s))


def from_curve(P: Point) -> CubicSolution:
    """Inverse of :func:`to_curve`, up to the sign convention of the triple."""
    if P.is_infinity:
        return CubicSolution(1, -1, 0)
    U, V = P.x / 12, P.y / 12
    coords = [(1 + V) / 2, (1 - V) / 2, -U]
    den = math.lcm(*(c.denominator for c in coords))
    return CubicSolution.from_any(*(int(c * den) for c in coords))


@dataclass(frozen=True)
class FactoredSolution:
    base: CubicSolution
    b: int
    z4: int
    alpha: int
    beta: int


def factor_alpha_beta(sol: CubicSolution) -> FactoredSolution:
    """Split z1 + z2 = 3^(3b+1) alpha^3 and z1^2 - z1 z2 + z2^2 = 3 beta^3."""
    z1, z2, z3 = sol.as_tuple()
    if z3 == 0:
        raise ValueError("z1 + z2 = 0 has no factorization")
    b = v3(z3)
    z4 = -z3 // 3**b
    s = z1 + z2
    q = z1 * z1 - z1 * z2 + z2 * z2
    if (z1 * z2) % 3 == 0:
        raise StructureError(f"{sol}: 3 divides z1*z2")
    if v3(s) != 3 * b + 1:
        raise StructureError(f"{sol}: v3(z1+z2) = {v3(s)}, expected {3 * b + 1}")
    alpha = perfect_cube_root(s // 3 ** (3 * b + 1))
    if q % 3 != 0 or (beta := perfect_cube_root(q // 3)) is None or alpha is None:
        raise StructureError(f"{sol}: alpha or beta is not an integer cube root")
    if alpha * beta != z4 or math.gcd(alpha, beta) != 1 or (alpha * beta) % 3 == 0:
        raise StructureError(f"{sol}: alpha={alpha}, beta={beta} violate the factorization")
    return FactoredSolution(sol, b, z4, alpha, beta)


def extract_alpha_beta_from_x(
    x: RationalLike, b: int, relax_3adic: bool = False
) -> Optional[tuple[int, int]]:
    """Solve x = 4 beta / (3^(2b) alpha^2) with alpha > 0 and gcd(alpha, beta) = 1.

    Strict mode also demands 3 does not divide alpha*beta, which forces
    v3(x) = -2b.  Relaxed mode allows 3 | alpha, as in rows of the case table
    whose b does not match the valuation of x.
    """
    x = as_rational(x)
    if x == 0 or b < 0:
        raise ValueError("need x != 0 and b >= 0")
    p, q = x.numerator, x.denominator
    scale = 9**b
    for g in (1, 2, 4):
        if (q * g) % scale or (p * g) % 4:
            continue
        alpha = perfect_square_root(q * g // scale)
        if alpha is None or alpha == 0:
            continue
        beta = p * g // 4
        if math.gcd(alpha, beta) != 1:
            continue
        if not relax_3adic and (alpha * beta) % 3 == 0:
            continue
        return alpha, beta
    return None


def final_inequality_holds(alpha: int, beta: int, b: int) -> bool:
    """3^(2b+2) (3^(3b+1) |alpha|^3 + 3^(2b+2)) > |3^(6b+1) alpha^6 - beta^3|."""
    lhs = 3 ** (2 * b + 2) * (3 ** (3 * b + 1) * abs(alpha) ** 3 + 3 ** (2 * b + 2))
    rhs = abs(3 ** (6 * b + 1) * alpha**6 - beta**3)
    return lhs > rhs


@dataclass(frozen=True)
class CaseVerdict:
    survived: bool
    check: str  # name of the first failing check, or "ok"
    reason: str
    witness: Optional[CubicSolution] = None
    w: Optional[int] = None
    roots: Optional[tuple[int, int]] = None


def solve_w(z1: int, z2: int, z3: int, b: int) -> Optional[int]:
    """Integer w with w z1 + 3^b z2 + z3 = 0, if any."""
    num = -(3**b * z2 + z3)
    if num % z1:
        return None
    return num // z1


def reconstruct_solution(alpha: int, beta: int, b: int) -> CaseVerdict:
    """Rebuild (z1, z2, z3) from (alpha, beta, b) and test every side condition.

    z1 + z2 = 3^(3b+1) alpha^3 and z1 z2 = 3^(6b+1) alpha^6 - beta^3, so z1, z2
    are the roots of a monic quadratic; z3 = -3^b alpha beta.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    S = 3 ** (3 * b + 1) * alpha**3
    Pr = 3 ** (6 * b + 1) * alpha**6 - beta**3
    disc = S * S - 4 * Pr
    r = perfect_square_root(disc)
    if r is None:
        return CaseVerdict(False, "discriminant", f"discriminant {disc} is not a perfect square")
    if (S + r) % 2:
        return CaseVerdict(False, "integral_roots", f"roots ({S}±{r})/2 are not integers")
    r1, r2 = (S + r) // 2, (S - r) // 2
    roots = (r1, r2)
    z3 = -(3**b) * alpha * beta

    def fail(check: str, reason: str) -> CaseVerdict:
        return CaseVerdict(False, check, reason, roots=roots)

    if cubic_eval(r1, r2, z3) != 0:
        return fail("cubic", f"({r1}, {r2}, {z3}) is not on the cubic")
    if math.gcd(r1, r2, z3) != 1:
        return fail("primitive", f"gcd({r1}, {r2}, {z3}) != 1")
    if (r1 * r2) % 3 == 0:
        return fail("coprime_to_3", f"3 divides z1*z2 = {r1 * r2}")

    target = 3 ** (3 * b + 2) - 1
    stages = ["divisibility", "w_integral", "w_divisible"]
    best = -1
    notes = []
    for z1, z2 in {(r1, r2), (r2, r1)}:
        if target % z1:
            stage, note = 0, f"{z1} does not divide {target}"
        elif (w := solve_w(z1, z2, z3, b)) is None:
            stage, note = 1, f"w = {Fraction(-(3**b * z2 + z3), z1)} is not an integer"
        elif w % 3 ** (b + 1):
            stage, note = 2, f"w = {w} is not divisible by {3 ** (b + 1)}"
        else:
            return CaseVerdict(True, "ok", f"w = {w}", CubicSolution.from_any(z1, z2, z3), w, roots)
        best = max(best, stage)
        notes.append(f"z1={z1}: {note}")
    return fail(stages[best], "; ".join(sorted(notes)))


@dataclass(frozen=True)
class CaseRecord:
    N: int
    b: int
    x_value: Fraction
    alpha: int
    beta: int
    strict_match: bool
    inequality_holds: bool
    reconstruction: CaseVerdict
    verdict: str = field(default="")
    reason: str = field(default="")

    @property
    def survived(self) -> bool:
        return self.verdict == "survived"


def analyze_case(N: int, b: int, x: Optional[Fraction] = None) -> CaseRecord:
    """Run both elimination criteria on the case x~ = x([N]G) with exponent b."""
    if x is None:
        x = E48.scalar_mul(G, N).x
    strict = extract_alpha_beta_from_x(x, b, relax_3adic=False)
    relaxed = extract_alpha_beta_from_x(x, b, relax_3adic=True)
    if relaxed is None:
        raise StructureError(f"no (alpha, beta) for x([{N}]G) = {x} at b = {b}")
    alpha, beta = relaxed
    holds = final_inequality_holds(alpha, beta, b)
    rec = reconstruct_solution(alpha, beta, b)

    if strict is None:
        verdict = "valuation_mismatch"
        reason = f"|x|_3 = 3^{abs3_log(x)} but b = {b} needs 3^{2 * b}"
    elif not holds:
        verdict = "inequality_failed"
        reason = f"final inequality fails; reconstruction: {rec.reason}"
    elif not rec.survived:
        verdict = "reconstruction_failed"
        reason = f"{rec.check}: {rec.reason}"
    else:
        verdict = "survived"
        reason = f"witness {rec.witness}, w = {rec.w}"
    return CaseRecord(N, b, x, alpha, beta, strict is not None, holds, rec, verdict, reason)
