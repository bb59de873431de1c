"""End-to-end verification pipeline assembling :class:`Report` objects."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

from . import heights
from .arith import abs3_log, v3
from .curve import E48, G
from .diophantine import CaseRecord, analyze_case, cubic_eval, factor_alpha_beta, from_curve, to_curve
from .reference import CASE_TABLE, GENERATOR_MULTIPLES, STATED_WITNESS, SURVIVOR_CASE, matches
from .report import Report
from .search import (
    bennett_scan,
    relative_boundary_cases,
    search_br_system,
    search_cubic,
    search_new_system,
    search_relative_system,
)


@dataclass
class SearchConfig:
    max_exp: int = 8
    bound: int = 500
    cubic_bound: int = 10**4
    max_b: int = 6
    bennett_bound: int = 10**6
    workers: int = 1


DEFAULT_VALUATION_MAX_N = 100
HEIGHT_MULTIPLE = 25


def all_cases() -> list[tuple[int, int]]:
    out = []
    for b in range(heights.max_b()):
        out.extend((N, b) for N in heights.case_list(b).candidates)
    return out


def case_records() -> list[CaseRecord]:
    max_n = max(N for N, _ in all_cases())
    xs = [P.x if not P.is_infinity else None for P in E48.multiples(G, max_n)]
    return [analyze_case(N, b, xs[N]) for N, b in all_cases()]


def record_witness(r: CaseRecord) -> dict:
    rec = r.reconstruction
    return {
        "N": r.N, "b": r.b,
        "x": {"num": str(r.x_value.numerator), "den": str(r.x_value.denominator)},
        "alpha": str(r.alpha), "beta": str(r.beta),
        "verdict": r.verdict, "reason": r.reason,
        "final_inequality_holds": r.inequality_holds,
        "reconstruction": {"survived": rec.survived, "check": rec.check,
                           "roots": None if rec.roots is None else [str(t) for t in rec.roots],
                           "w": None if rec.w is None else str(rec.w)},
    }


# -- individual stages -------------------------------------------------------

def check_generator(report: Report) -> None:
    with report.timed() as t:
        ok_curve = (E48.A, E48.B) == (0, -48) and E48.discriminant == -(3**5) * 2**12 \
            and E48.j_invariant == 0
        ok_g = E48.on_curve(G) and (G.x, G.y) == (4, 4)
        mults = {n: E48.scalar_mul(G, n) for n in GENERATOR_MULTIPLES}
        ok_m = all(matches(ex, mults[n].x) and matches(ey, mults[n].y)
                   for n, (ex, ey) in GENERATOR_MULTIPLES.items())
    report.add("curve", "y^2 = x^3 - 48, discriminant -3^5 2^12, j = 0", ok_curve,
               {"discriminant": E48.discriminant, "j": str(E48.j_invariant)}, t["elapsed_ms"])
    report.add("generator", "G = (4, 4) on the curve; E(Q) = <G> taken as input", ok_g,
               {"G": [str(G.x), str(G.y)], "group_structure": "assumed cyclic, generated by G"})
    report.add("small-multiples", "[2]G = (28, -148), [3]G = (73/9, 595/27)", ok_m,
               {str(n): [str(P.x), str(P.y)] for n, P in mults.items()})


def run_valuation_check(max_n: int = DEFAULT_VALUATION_MAX_N, report: Report | None = None) -> Report:
    """|x([n]G)|_3 = 3^(2 v3(n)) for 1 <= n <= max_n."""
    if max_n < 1:
        raise ValueError("max_n must be positive")
    report = report if report is not None else Report({"max_n": max_n})
    with report.timed() as t:
        failures = []
        P = E48.multiples(G, 1)[1]
        for n in range(1, max_n + 1):
            if n > 1:
                P = E48.add(P, G)
            got = abs3_log(P.x)
            want = 2 * v3(n)
            if got != want:
                failures.append({"n": n, "abs3_exponent": got, "expected": want})
    report.add("valuation-law", "|x([n]G)|_3 = 3^(2m) for n = 3^m l, 3 not dividing l",
               not failures, {"max_n": max_n, "failures": failures}, t["elapsed_ms"])
    return report


def run_heights(max_n: int = HEIGHT_MULTIPLE, report: Report | None = None) -> Report:
    report = report if report is not None else Report({"max_n": max_n})
    with report.timed() as t:
        try:
            lower = heights.hhat_generator_lower(HEIGHT_MULTIPLE)
            ok = True
        except ArithmeticError:
            lower, ok = heights.generator_interval(HEIGHT_MULTIPLE).lower, False
        x25 = E48.scalar_mul(G, HEIGHT_MULTIPLE).x
        digits = len(str(max(abs(x25.numerator), x25.denominator)))
    report.add("hhat-G-lower", "hhat(G) > 0.25 via hhat([25]G) = 625 hhat(G)", ok,
               {"certified_lower": f"{float(lower):.9f}",
                "certified_lower_exact": lower, "digits_of_x25": digits}, t["elapsed_ms"])
    with report.timed() as t:
        intervals = heights.generator_intervals(max_n)
        common = heights.common_intersection(intervals)
    report.add("silverman-consistency",
               f"intervals (h/2 - 2.13, h/2 + 2.222)/N^2 for N <= {max_n} share a point",
               common is not None,
               None if common is None else {"common": [f"{float(common.lower):.9f}",
                                                       f"{float(common.upper):.9f}"]},
               t["elapsed_ms"])
    return report


def check_case_bounds(report: Report, b_limit: int = 10) -> None:
    with report.timed() as t:
        bounds = {b: heights.n_squared_bound(b) for b in range(3)}
        rounding = {b: f"{float(heights.n_squared_real_bound(b)):.6f}" for b in range(3)}
        lists = {b: list(heights.case_list(b).candidates) for b in range(b_limit + 1)}
    report.add("n-squared-bound", "2((36.5b + 30.5) ln 3 + 4.444) < 81b + 76 = 76, 157, 238",
               bounds == {0: 76, 1: 157, 2: 238},
               {"bounds": bounds, "certified_real_bounds": rounding}, t["elapsed_ms"])
    expected = {0: [1, 2, 3, 4, 5, 6, 7, 8], 1: [3, 6, 9, 12], 2: [9]}
    ok = all(lists[b] == expected[b] for b in expected) and \
        all(not lists[b] for b in range(3, b_limit + 1)) and heights.max_b() == 3
    report.add("case-lists", "3^(2b) <= N^2 < 81b + 76 with 3^b | N; b < 3", ok,
               {"lists": {str(b): v for b, v in lists.items()}})


def check_cases(report: Report, records: list[CaseRecord]) -> None:
    for r in records:
        expect_survive = (r.N, r.b) == SURVIVOR_CASE
        report.add(f"case({r.N},{r.b})",
                   "survivor" if expect_survive else "eliminated",
                   r.survived == expect_survive, record_witness(r))

    others = [r for r in records if (r.N, r.b) != SURVIVOR_CASE]
    report.add("final-inequality-fails",
               "3^(2b+2)(3^(3b+1)|alpha|^3 + 3^(2b+2)) > |3^(6b+1) alpha^6 - beta^3| fails off the survivor",
               len(others) == len(CASE_TABLE) and not any(r.inequality_holds for r in others),
               {"cases": len(others),
                "holding": [[r.N, r.b] for r in others if r.inequality_holds]})

    matched = [r for r in records if r.strict_match]
    disagree = [[r.N, r.b] for r in matched if r.inequality_holds != r.reconstruction.survived]
    report.add("elimination-agreement",
               "final inequality and reconstruction agree where b = v3(N)",
               not disagree, {"checked": len(matched), "disagreements": disagree})

    mismatched = sorted([r.N, r.b] for r in records if not r.strict_match)
    report.add("valuation-mismatch-rows",
               "rows with b != v3(N) have no alpha coprime to 3",
               all(v3(N) != b for N, b in mismatched) and
               all(v3(r.N) == r.b for r in matched),
               {"rows": mismatched})

    table_rows = {(r.N, r.b): r for r in records}
    bad = []
    for key, (ex, ea, eb) in CASE_TABLE.items():
        r = table_rows.get(key)
        if r is None or not (matches(ex, r.x_value) and matches(ea, r.alpha) and matches(eb, r.beta)):
            bad.append(list(key))
    report.add("table-reproduction", "x([N]G), alpha, beta for all 12 table rows",
               not bad and set(CASE_TABLE) | {SURVIVOR_CASE} == set(table_rows),
               {"rows": len(CASE_TABLE), "mismatches": bad})


def check_survivor(report: Report, records: list[CaseRecord]) -> None:
    survivors = [r for r in records if r.survived]
    ok = len(survivors) == 1 and (survivors[0].N, survivors[0].b) == SURVIVOR_CASE
    wit = survivors[0].reconstruction if survivors else None
    ok = ok and wit.witness.as_tuple() == (2, 1, -1) and wit.w == 0
    report.add("unique-survivor", "only (w, b, [Z1:Z2:Z3]) = (0, 0, [2:1:-1])", ok,
               {"survivors": [[r.N, r.b] for r in survivors],
                "witness": None if wit is None else wit.witness, "w": None if wit is None else wit.w,
                "b": 0})
    w, b, stated = STATED_WITNESS
    value = cubic_eval(*stated)
    corrected = (stated[0], stated[1], -stated[2])
    report.add("witness-sign",
               "stated witness [2:1:1] is off the cubic; [2:1:-1] satisfies both equations",
               value != 0 and cubic_eval(*corrected) == 0
               and w * corrected[0] + 3**b * corrected[1] + corrected[2] == 0,
               {"stated": list(stated), "cubic_at_stated": value, "corrected": list(corrected)})


def cross_check_survivor(report: Report, config: SearchConfig, solutions=None) -> None:
    """``solutions`` is an optional zero-argument callable returning cubic solutions."""
    with report.timed() as t:
        hits = search_new_system(config.cubic_bound, config.max_b, workers=config.workers,
                                 solutions=None if solutions is None else solutions())
    ok = [(h.w, h.b, h.solution.as_tuple()) for h in hits] == [(0, 0, (2, 1, -1))]
    report.add("search-new", f"w Z1 + 3^b Z2 + Z3 = 0 over cubic solutions, max(|z1|,|z2|) <= "
               f"{config.cubic_bound}, b <= {config.max_b}",
               ok, {"hits": [[h.w, h.b, h.solution] for h in hits]}, t["elapsed_ms"])


def verify_theorem(valuation_max_n: int = DEFAULT_VALUATION_MAX_N,
                   config: SearchConfig | None = None, timing: bool = True) -> Report:
    """Run the full elimination argument and cross-check the survivor by search."""
    config = config or SearchConfig()
    report = Report({"valuation_max_n": valuation_max_n, "cubic_bound": config.cubic_bound,
                     "max_b": config.max_b}, timing=timing)
    check_generator(report)
    run_valuation_check(valuation_max_n, report)
    run_heights(HEIGHT_MULTIPLE, report)
    check_case_bounds(report)
    with report.timed() as t:
        records = case_records()
    report.add("case-records", "x([N]G) and (alpha, beta) for every candidate case",
               len(records) == 13, {"count": len(records)}, t["elapsed_ms"])
    check_cases(report, records)
    check_survivor(report, records)
    cross_check_survivor(report, config)
    report.stamp()
    return report


def run_searches(config: SearchConfig | None = None, which: tuple[str, ...] = ("br", "br-equal", "relative", "cubic", "new", "bennett"),
                 allow_equal: bool | None = None, timing: bool = True) -> Report:
    """Run the brute-force oracles and compare with the expected outcomes."""
    config = config or SearchConfig()
    report = Report({"max_exp": config.max_exp, "bound": config.bound,
                     "cubic_bound": config.cubic_bound, "max_b": config.max_b,
                     "bennett_bound": config.bennett_bound, "searches": list(which)},
                    timing=timing)
    W = config.workers
    cache: dict = {}

    def cubic_solutions():
        if "cubic" not in cache:
            cache["cubic"] = search_cubic(config.cubic_bound, workers=W)
        return cache["cubic"]

    for name in which:
        if name == "br":
            with report.timed() as t:
                hits = search_br_system(config.max_exp, config.bound, bool(allow_equal), workers=W)
            if allow_equal:
                ok = all(a == b and z == (1, -1, 0) for a, b, z in hits) and \
                    len(hits) == config.max_exp + 1
            else:
                ok = not hits
            report.add("search-br", f"Z1^3 + Z2^3 + 9Z3^3 = 0, 3^a Z1 + 3^b Z2 + Z3 = 0, "
                       f"{'a >= b' if allow_equal else 'a > b'} >= 0, a <= {config.max_exp}, "
                       f"|Z1|,|Z2| <= {config.bound}", ok, {"hits": hits}, t["elapsed_ms"])
        elif name == "br-equal":
            with report.timed() as t:
                hits = search_br_system(min(config.max_exp, 3), min(config.bound, 50), True, workers=W)
            ok = sorted(hits) == [(m, m, (1, -1, 0)) for m in range(min(config.max_exp, 3) + 1)]
            report.add("search-br-diagonal", "a = b allowed: only the family (m, m, [1:-1:0])",
                       ok, {"hits": hits}, t["elapsed_ms"])
        elif name == "relative":
            with report.timed() as t:
                hits = search_relative_system(config.max_exp, config.bound, workers=W)
                boundary = relative_boundary_cases(config.max_exp)
            report.add("search-relative", f"3^a1 Z1^3 + 3^a2 Z2^3 + Z3^3 = 0, 3^a1 Z1 + 3^a2 Z2 + Z3 = 0, "
                       f"a1 > a2 > 0, a1 <= {config.max_exp}, |Z1|,|Z2| <= {config.bound}",
                       not hits, {"hits": hits}, t["elapsed_ms"])
            bad = [[c.a1, c.a2, c.zero] for c in boundary
                   if c.residual == 0 or not c.residue_contradiction]
            report.add("relative-boundary", "no solutions with Z1 Z2 Z3 = 0; a_i = 3q_i + r_i",
                       not bad, {"cases": len(boundary), "failures": bad})
        elif name == "cubic":
            with report.timed() as t:
                small = search_cubic(25, workers=W)
            expected = {(1, 2, -1), (2, 1, -1), (-17, 20, -7), (20, -17, -7)}
            report.add("search-cubic", "Z1^3 + Z2^3 + 9Z3^3 = 0, max(|Z1|,|Z2|) <= 25",
                       {s.as_tuple() for s in small} == expected, {"solutions": small},
                       t["elapsed_ms"])
            with report.timed() as t:
                sols = cubic_solutions()
                bad = []
                for s in sols:
                    try:
                        P = to_curve(s)
                        if not E48.on_curve(P) or from_curve(P) != s:
                            bad.append(s)
                        factor_alpha_beta(s)
                    except ArithmeticError:
                        bad.append(s)
            report.add("cubic-structure", "curve roundtrip and alpha/beta factorization on "
                       f"all solutions with max(|Z1|,|Z2|) <= {config.cubic_bound}",
                       not bad, {"solutions": sols, "failures": bad}, t["elapsed_ms"])
        elif name == "new":
            cross_check_survivor(report, config, cubic_solutions)
        elif name == "bennett":
            with report.timed() as t:
                bad = bennett_scan(config.bennett_bound, workers=W)
            report.add("bennett-scan", "|z2^3 + 9z3^3| >= max(|z2|, |3z3|)^0.24 / 3 near z2 = -9^(1/3) z3, "
                       f"|z3| <= {config.bennett_bound}", bad is None,
                       {"counterexample": bad}, t["elapsed_ms"])
        else:
            raise ValueError(f"unknown search {name!r}")
    report.stamp()
    return report


# -- table ------------------------------------------------------------------

TABLE_COLUMNS = ["N", "b", "x_num", "x_den", "alpha", "beta", "verdict", "reason"]


def table_rows(records: list[CaseRecord] | None = None) -> list[dict]:
    records = case_records() if records is None else records
    rows = []
    for r in sorted(records, key=lambda r: (r.N, r.b)):
        rows.append({"N": r.N, "b": r.b, "x_num": str(r.x_value.numerator),
                     "x_den": str(r.x_value.denominator), "alpha": str(r.alpha),
                     "beta": str(r.beta), "verdict": r.verdict, "reason": r.reason})
    return rows


def emit_table(fmt: str = "text", records: list[CaseRecord] | None = None) -> str:
    rows = table_rows(records)
    if fmt == "json":
        return json.dumps({"columns": TABLE_COLUMNS, "rows": rows}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, TABLE_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for row in rows:
        x = Fraction(int(row["x_num"]), int(row["x_den"]))
        lines.append(f"({row['N']},{row['b']})  x = {x}")
        lines.append(f"        alpha = {row['alpha']}")
        lines.append(f"        beta  = {row['beta']}")
        lines.append(f"        {row['verdict']}: {row['reason']}")
    return "\n".join(lines) + "\n"
