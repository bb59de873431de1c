"""Brute-force search oracles for the cubic systems and the Bennett scan.

The vectorized scans filter with numpy (floating cube roots or residues
modulo primes below 2^21, so int64 never overflows) and confirm every
surviving candidate with exact Python integers.  A filter only ever discards
candidates that provably fail, so no solution inside the box is missed.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, TypeVar

import numpy as np

from .arith import integer_cube_root, v3
from .diophantine import CubicSolution, cubic_eval, normalize_triple, solve_w

T = TypeVar("T")

_PRIMES = (2097143, 2097133)
# 2 * bound^3 must fit in int64
MAX_CUBIC_BOUND = 10**6


def _chunks(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split the closed range [lo, hi] into at most ``parts`` closed pieces."""
    parts = max(1, min(parts, hi - lo + 1))
    step = -(-(hi - lo + 1) // parts)
    return [(a, min(a + step - 1, hi)) for a in range(lo, hi + 1, step)]


def _run(fn: Callable[..., list[T]], jobs: Sequence[tuple], workers: int) -> list[T]:
    if workers <= 1 or len(jobs) <= 1:
        results = [fn(*job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, *zip(*jobs)))
    return [item for part in results for item in part]


# -- Z1^3 + Z2^3 + 9 Z3^3 = 0 ------------------------------------------------

def _cubic_rows(z1_lo: int, z1_hi: int, bound: int) -> list[tuple[int, int, int]]:
    found = []
    for z1 in range(z1_lo, z1_hi + 1):
        # swap symmetry: only z2 <= z1 here
        z2 = np.arange(-bound, z1 + 1, dtype=np.int64)
        s = z1**3 + z2**3
        z2 = z2[s % 9 == 0]
        t = -(s[s % 9 == 0] // 9)
        c = np.rint(np.cbrt(t.astype(np.float64))).astype(np.int64)
        hit = c**3 == t
        for a, z3 in zip(z2[hit].tolist(), c[hit].tolist()):
            if cubic_eval(z1, a, z3) == 0 and (z1, a) != (0, 0):
                found.append((z1, a, z3))
    return found


def search_cubic(bound: int, include_trivial: bool = False, workers: int = 1) -> list[CubicSolution]:
    """All normalized primitive solutions with max(|z1|, |z2|) <= bound.

    The line z1 + z2 = 0 (the point [1:-1:0]) is left out unless asked for.
    """
    if not 1 <= bound <= MAX_CUBIC_BOUND:
        raise ValueError(f"bound must lie in [1, {MAX_CUBIC_BOUND}]")
    raw = _run(_cubic_rows, [(a, b, bound) for a, b in _chunks(-bound, bound, workers)], workers)
    sols = set()
    for t in raw:
        if math.gcd(*t) != 1:
            continue
        s = CubicSolution.from_any(*t)
        sols.update((s, s.swapped()))
    if not include_trivial:
        sols.discard(CubicSolution(1, -1, 0))
    return sorted(sols, key=lambda s: (max(abs(s.z1), abs(s.z2)), s.as_tuple()))


# -- w Z1 + 3^b Z2 + Z3 = 0 over solutions of the cubic ----------------------

@dataclass(frozen=True)
class NewSystemHit:
    w: int
    b: int
    solution: CubicSolution


def search_new_system(bound: int, max_b: int, workers: int = 1,
                      solutions: Optional[Iterable[CubicSolution]] = None) -> list[NewSystemHit]:
    """Solutions (w, b, [z1:z2:z3]) with b <= max_b and 3^(b+1) | w.

    The linear equation forces b = v3(z3), so each cubic solution is tried
    once; both orderings of (z1, z2) are already in the cubic list.
    """
    if solutions is None:
        solutions = search_cubic(bound, workers=workers)
    hits = []
    for sol in solutions:
        if sol.z3 == 0:
            continue
        b = v3(sol.z3)
        if b > max_b:
            continue
        w = solve_w(sol.z1, sol.z2, sol.z3, b)
        if w is not None and w % 3 ** (b + 1) == 0:
            hits.append(NewSystemHit(w, b, sol))
    return hits


# -- linear-plus-cubic systems over a coordinate box -------------------------

def _system_scan(coeffs: tuple[int, int, int], lin: tuple[int, int], bound: int) -> list[tuple[int, int, int]]:
    """Points with |Z1|, |Z2| <= bound of
    c1 Z1^3 + c2 Z2^3 + c3 Z3^3 = 0,  Z3 = -(l1 Z1 + l2 Z2).
    """
    c1, c2, c3 = coeffs
    l1, l2 = lin
    grid = np.arange(-bound, bound + 1, dtype=np.int64)
    Z1, Z2 = np.meshgrid(grid, grid, indexing="ij")
    Z1, Z2 = Z1.ravel(), Z2.ravel()
    keep = np.ones(Z1.shape, dtype=bool)
    for p in _PRIMES:
        a, b = Z1 % p, Z2 % p
        z3 = (-(l1 % p) * a - (l2 % p) * b) % p

        def cube(v):
            return (v * v % p) * v % p

        f = ((c1 % p) * cube(a) % p + (c2 % p) * cube(b) % p + (c3 % p) * cube(z3) % p) % p
        keep &= f == 0
    out = []
    for z1, z2 in zip(Z1[keep].tolist(), Z2[keep].tolist()):
        if z1 == 0 and z2 == 0:
            continue
        z3 = -(l1 * z1 + l2 * z2)
        if c1 * z1**3 + c2 * z2**3 + c3 * z3**3 == 0:
            out.append((z1, z2, z3))
    return out


def _br_job(a: int, b: int, bound: int) -> list[tuple[int, int, tuple[int, int, int]]]:
    return [(a, b, normalize_triple(*t)) for t in _system_scan((1, 1, 9), (3**a, 3**b), bound)]


def search_br_system(max_exp: int, bound: int, allow_equal: bool = False,
                     workers: int = 1) -> list[tuple[int, int, tuple[int, int, int]]]:
    """Z1^3 + Z2^3 + 9 Z3^3 = 0 with Z3 = -(3^a Z1 + 3^b Z2), 0 <= b < a <= max_exp.

    With ``allow_equal`` the diagonal a = b is scanned too.
    """
    if max_exp < 1 or bound < 1:
        raise ValueError("max_exp and bound must be positive")
    jobs = [(a, b, bound) for a in range(max_exp + 1) for b in range(a + 1)
            if a > b or allow_equal]
    return sorted(set(_run(_br_job, jobs, workers)))


def _relative_job(a1: int, a2: int, bound: int) -> list[tuple[int, int, tuple[int, int, int]]]:
    hits = _system_scan((3**a1, 3**a2, 1), (3**a1, 3**a2), bound)
    return [(a1, a2, normalize_triple(*t)) for t in hits]


def relative_pairs(max_exp: int) -> list[tuple[int, int]]:
    return [(a1, a2) for a1 in range(2, max_exp + 1) for a2 in range(1, a1)]


def search_relative_system(max_exp: int, bound: int,
                           workers: int = 1) -> list[tuple[int, int, tuple[int, int, int]]]:
    """3^a1 Z1^3 + 3^a2 Z2^3 + Z3^3 = 0 with Z3 = -(3^a1 Z1 + 3^a2 Z2), a1 > a2 > 0."""
    if max_exp < 1 or bound < 1:
        raise ValueError("max_exp and bound must be positive")
    jobs = [(a1, a2, bound) for a1, a2 in relative_pairs(max_exp)]
    return sorted(set(_run(_relative_job, jobs, workers)))


@dataclass(frozen=True)
class BoundaryCase:
    a1: int
    a2: int
    zero: str  # which coordinate vanishes
    residual: int  # cubic evaluated at the unique candidate point; nonzero means no solution
    residue_equation: str
    residue_contradiction: bool


def relative_boundary_cases(max_exp: int) -> list[BoundaryCase]:
    """The three Z1 Z2 Z3 = 0 lines for every exponent pair, settled exactly.

    On each line the linear equation fixes the point, so the cubic is checked
    at that one point.  The residue form a_i = 3 q_i + r_i gives the matching
    impossible equation between q's and r's.
    """
    out = []
    for a1, a2 in relative_pairs(max_exp):
        (q1, r1), (q2, r2) = divmod(a1, 3), divmod(a2, 3)
        assert a1 == 3 * q1 + r1 and a2 == 3 * q2 + r2 and {r1, r2} <= {0, 1, 2}
        # Z3 = 0: [Z1:Z2] = [1 : -3^(a1-a2)]
        z = (1, -(3 ** (a1 - a2)), 0)
        res = 3**a1 * z[0] ** 3 + 3**a2 * z[1] ** 3 + z[2] ** 3
        out.append(BoundaryCase(a1, a2, "Z3", res, f"6({q1}-{q2}) = {r1}-{r2}",
                                6 * (q1 - q2) != r1 - r2))
        # Z2 = 0: [Z1:Z3] = [1 : -3^a1]
        z = (1, 0, -(3**a1))
        res = 3**a1 * z[0] ** 3 + 3**a2 * z[1] ** 3 + z[2] ** 3
        out.append(BoundaryCase(a1, a2, "Z2", res, f"6*{q1} = {r1}", 6 * q1 != r1))
        # Z1 = 0: [Z2:Z3] = [1 : -3^a2]
        z = (0, 1, -(3**a2))
        res = 3**a1 * z[0] ** 3 + 3**a2 * z[1] ** 3 + z[2] ** 3
        out.append(BoundaryCase(a1, a2, "Z1", res, f"6*{q2} = {r2}",
                                6 * q2 != r2 or (q2 == 0 and r2 == 0)))
    return out


# -- Bennett's lower bound |z2^3 + 9 z3^3| >= max(|z2|, |3 z3|)^0.24 / 3 -----

def bennett_holds(z2: int, z3: int) -> bool:
    """Exact test of 3 |z2^3 + 9 z3^3| >= max(|z2|, |3 z3|)^(6/25)."""
    d = abs(z2**3 + 9 * z3**3)
    m = max(abs(z2), abs(3 * z3))
    return (3 * d) ** 25 >= m**6


def _bennett_threshold(m_max: int) -> int:
    """Smallest t with t^25 >= m_max^6, so 3|D| >= t settles every point with M <= m_max."""
    t = 1
    while t**25 < m_max**6:
        t += 1
    return t


def _bennett_job(lo: int, hi: int, threshold: int) -> list[tuple[int, int]]:
    bad = []
    cbrt9 = 9 ** (1 / 3)
    for z3 in range(lo, hi + 1):
        n = 9 * z3**3
        # float seed, exact correction to floor(n^(1/3))
        r = int(z3 * cbrt9)
        while r**3 > n:
            r -= 1
        while (r + 1) ** 3 <= n:
            r += 1
        for k in range(r - 2, r + 3):
            d = abs(n - k**3)
            if 3 * d >= threshold:
                continue
            if not bennett_holds(-k, z3):
                bad.append((-k, z3))
    return bad


def bennett_scan(z3_bound: int, workers: int = 1) -> Optional[tuple[int, int]]:
    """Check the bound at the five integers z2 nearest -9^(1/3) z3, 1 <= |z3| <= z3_bound.

    (z2, z3) -> (-z2, -z3) preserves both sides, so only z3 > 0 is scanned.
    Returns the first counterexample (z2, z3), or None.
    """
    if z3_bound < 1:
        raise ValueError("z3_bound must be positive")
    m_max = max(3 * z3_bound, integer_cube_root(9 * z3_bound**3) + 2)
    threshold = _bennett_threshold(m_max)
    bad = _run(_bennett_job, [(a, b, threshold) for a, b in _chunks(1, z3_bound, workers)], workers)
    return min(bad, key=lambda t: abs(t[1])) if bad else None
