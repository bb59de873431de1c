from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cubic48.arith import v3
from cubic48.curve import G, Point, nG, on_curve
from cubic48.diophantine import (
    CubicSolution,
    StructureError,
    analyze_case,
    cubic_eval,
    extract_alpha_beta_from_x,
    factor_alpha_beta,
    final_inequality_holds,
    from_curve,
    normalize_triple,
    reconstruct_solution,
    to_curve,
)
from cubic48.search import search_cubic
from cubic48.verify import case_records

F = Fraction


@pytest.mark.parametrize("z, expected", [((2, 1, -1), 0), ((20, -17, -7), 0), ((1, 1, 1), 11)])
def test_cubic_eval(z, expected):
    assert cubic_eval(*z) == expected


def test_solution_invariants():
    with pytest.raises(ValueError):
        CubicSolution(2, 1, 1)
    with pytest.raises(ValueError):
        CubicSolution(-2, -1, 1)  # not normalized
    assert CubicSolution.from_any(-4, -2, 2) == CubicSolution(2, 1, -1)
    assert normalize_triple(-1, 1, 0) == (1, -1, 0)


@pytest.mark.parametrize("z, point", [
    ((2, 1, -1), (4, 4)),
    ((20, -17, -7), (28, 148)),
    ((1, 2, -1), (4, -4)),
])
def test_to_curve(z, point):
    P = to_curve(CubicSolution(*z))
    assert (P.x, P.y) == point and on_curve(P)


def test_to_curve_rejects_line_at_infinity():
    with pytest.raises(ValueError):
        to_curve(CubicSolution(1, -1, 0))


def test_from_curve():
    assert from_curve(G) == CubicSolution(2, 1, -1)
    sol = from_curve(Point.affine(28, -148))
    assert sol in (CubicSolution(20, -17, -7), CubicSolution(-17, 20, -7))
    sol3 = from_curve(nG(3))
    assert v3(sol3.z3) == 1


@pytest.mark.parametrize("z, b, alpha, beta, z4", [
    ((2, 1, -1), 0, 1, 1, 1),
    ((20, -17, -7), 0, 1, 7, 7),
    ((1, 2, -1), 0, 1, 1, 1),
])
def test_factor_alpha_beta(z, b, alpha, beta, z4):
    f = factor_alpha_beta(CubicSolution(*z))
    assert (f.b, f.alpha, f.beta, f.z4) == (b, alpha, beta, z4)


@pytest.mark.parametrize("x, b, relax, expected", [
    (F(73, 9), 1, False, (2, 73)),
    (F(73, 9), 0, True, (6, 73)),
    (F(4), 0, False, (1, 1)),
    (F(73, 9), 0, False, None),
])
def test_extract_alpha_beta(x, b, relax, expected):
    assert extract_alpha_beta_from_x(x, b, relax) == expected


@given(st.integers(1, 10**8), st.integers(-10**12, 10**12).filter(bool), st.integers(0, 4))
def test_extract_inverts_the_x_formula(alpha, beta, b):
    from math import gcd
    if gcd(alpha, beta) != 1 or (alpha * beta) % 3 == 0:
        return
    x = F(4 * beta, 9**b * alpha**2)
    assert extract_alpha_beta_from_x(x, b) == (alpha, beta)


@pytest.mark.parametrize("args, expected", [((1, 1, 0), True), ((1, 7, 0), False), ((6, 73, 0), False)])
def test_final_inequality(args, expected):
    assert final_inequality_holds(*args) is expected


def test_final_inequality_values():
    # 3^2 (3 + 9) = 108 against |3 - beta^3|
    assert 9 * (3 * 1 + 9) == 108
    assert abs(3 - 343) == 340 and abs(3 * 6**6 - 73**3) == 249049
    assert 9 * (3 * 216 + 9) == 5913


def test_reconstruct_survivor():
    v = reconstruct_solution(1, 1, 0)
    assert v.survived and v.witness == CubicSolution(2, 1, -1) and v.w == 0


def test_reconstruct_second_multiple():
    v = reconstruct_solution(1, 7, 0)
    assert not v.survived
    assert set(v.roots) == {20, -17}
    # discriminant 9 + 4 * 340 = 37^2
    assert 9 + 1360 == 37**2
    assert "20 does not divide 8" in v.reason and "-17 does not divide 8" in v.reason
    # w for either assignment: -(3^0 z2 + z3) / z1
    assert F(-(-17 - 7), 20) == F(24, 20) and F(-(20 - 7), -17) == F(13, 17)


def test_reconstruct_third_multiple_relaxed():
    v = reconstruct_solution(6, 73, 0)
    assert not v.survived
    assert set(v.roots) == {919, -271}
    assert 648**2 - 4 * (3 * 6**6 - 73**3) == 1190**2 == 1416100


def test_reconstruct_rejects_nonpositive_alpha():
    with pytest.raises(ValueError):
        reconstruct_solution(0, 1, 0)


@pytest.fixture(scope="module")
def oracle_solutions():
    return search_cubic(1000)


def test_roundtrip_on_oracle_solutions(oracle_solutions):
    assert oracle_solutions
    for s in oracle_solutions:
        P = to_curve(s)
        assert on_curve(P)
        assert from_curve(P) == s


def test_factorization_totality(oracle_solutions):
    for s in oracle_solutions:
        f = factor_alpha_beta(s)
        assert s.z1 + s.z2 == 3 ** (3 * f.b + 1) * f.alpha**3
        assert s.z1**2 - s.z1 * s.z2 + s.z2**2 == 3 * f.beta**3


def test_factorization_structure_error():
    # on the cubic's projective closure only through a forged instance
    bogus = object.__new__(CubicSolution)
    object.__setattr__(bogus, "z1", 4)
    object.__setattr__(bogus, "z2", 5)
    object.__setattr__(bogus, "z3", -1)
    with pytest.raises(StructureError):
        factor_alpha_beta(bogus)


def test_divisibility_is_conditional():
    # (20, -17, -7) solves the cubic but not the linear equation, and 20 does not divide 8
    assert cubic_eval(20, -17, -7) == 0
    assert (3**2 - 1) % 20 != 0


@pytest.fixture(scope="module")
def records():
    return case_records()


def test_elimination_agreement(records):
    for r in records:
        if v3(r.N) == r.b:
            assert r.strict_match
            assert r.inequality_holds == r.reconstruction.survived
    assert [(r.N, r.b) for r in records if r.survived] == [(1, 0)]


def test_relaxed_alpha_structure(records):
    by_key = {(r.N, r.b): r for r in records}
    for (N, b) in [(3, 0), (6, 0), (9, 1)]:
        matched = by_key[(N, v3(N))]
        assert by_key[(N, b)].alpha == 3 ** (v3(N) - b) * matched.alpha
    assert (by_key[(3, 0)].alpha, by_key[(6, 0)].alpha, by_key[(9, 1)].alpha) == (6, 7140, 109083462)


def test_mismatch_rows_are_flagged(records):
    flagged = sorted((r.N, r.b) for r in records if r.verdict == "valuation_mismatch")
    assert flagged == [(3, 0), (6, 0), (9, 1)]


def test_analyze_case_recomputes_x():
    r = analyze_case(4, 0)
    assert r.x_value == F(9772, 1369) and (r.alpha, r.beta) == (37, 2443)
    assert r.verdict == "inequality_failed"
