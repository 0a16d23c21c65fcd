"""Acceptance checks: formulas and bounds against published values and
brute-force counts.

Each criterion produces one :class:`CheckRecord`.  ``level="full"`` runs
every check at its stated size; ``"smoke"`` runs reduced instances that
finish in seconds.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from . import reference
from .bounds import (
    cc_bounds,
    cc_bounds_lmax,
    cone_bounds,
    delta_3x3_exact,
    euler_power_m_bound,
    mrd_density_upper_m,
    mrd_density_upper_q,
    tingley_lower,
)
from .families import line_spread, random_cone_codes, random_family, subspaces_of_coordinate_space
from .figures import fig1_rows, fig2_rows, is_prime_power
from .gf import GF, all_subspaces, meet, vector_code
from .oracle import (
    Cone,
    count_common_complements,
    count_distinguishing_cone,
    dual_census,
    functional_division_check,
    intersection_profile,
    mrd_census,
    nu_census,
    tau_census,
    tau_union_census,
    theta_census,
)
from .qfunc import (
    delta_asym_q,
    delta_gap,
    nu,
    nu_asym_q,
    pi_q_interval,
    qbinom,
    tau_linear,
    theta,
)

TREND_QS = (2, 3, 4, 5, 7, 8, 9, 11, 13)


@dataclass
class CheckRecord:
    criterion: int
    name: str
    params: dict
    expected: object
    got: object
    passed: bool
    source: str
    elapsed: float = 0.0
    time_limit: float | None = None
    notes: list = field(default_factory=list)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] criterion {self.criterion}: {self.name} ({self.elapsed:.2f}s)"


@dataclass
class VerificationReport:
    level: str
    records: list[CheckRecord]
    elapsed: float

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self) -> dict:
        def clean(v):
            if isinstance(v, Fraction):
                return f"{v.numerator}/{v.denominator}"
            if isinstance(v, dict):
                return {str(a): clean(b) for a, b in v.items()}
            if isinstance(v, (list, tuple, set)):
                return [clean(x) for x in v]
            return v

        return {
            "level": self.level,
            "passed": self.passed,
            "elapsed": round(self.elapsed, 3),
            "records": [clean(asdict(r)) for r in self.records],
        }


def _timed(fn: Callable[[], CheckRecord], limit: float | None) -> CheckRecord:
    t0 = time.perf_counter()
    rec = fn()
    rec.elapsed = time.perf_counter() - t0
    rec.time_limit = limit
    if limit is not None and rec.elapsed >= limit:
        rec.passed = False
        rec.notes.append(f"runtime {rec.elapsed:.1f}s exceeds {limit}s")
    return rec


# --- 1 -------------------------------------------------------------------------


def check_worked_example() -> CheckRecord:
    F = GF(2)
    got = {}
    for label, fam in (("spread", line_spread(F, 5)), ("planes", subspaces_of_coordinate_space(F, 5, 3, 2))):
        prof = intersection_profile(fam)
        cone_size = 1 + sum(1 for _ in {v for A in fam.members for v in A.projective_points()})
        _, meeting = count_common_complements(fam, 3)
        got[label] = {
            "cc_lower": cc_bounds(prof, 2).lower_int,
            "cone_lower": cone_bounds(cone_size, 5, 3, 2).lower_int,
            "intersecting": meeting,
        }
    expected = {
        "spread": {"cc_lower": 141, "cone_lower": 139, "intersecting": 155},
        "planes": {"cc_lower": 131, "cone_lower": 112, "intersecting": 155},
    }
    return CheckRecord(1, "worked example lower bounds and census", {"N": 5, "k": 3, "q": 2}, expected, got,
                       got == expected, "published-value")


# --- 2, 3 ----------------------------------------------------------------------


def _compare_table(rows, refs: tuple[dict, dict], tol: Fraction):
    worst = Fraction(0)
    mismatches = []
    for q, a, b in rows:
        for val, ref in zip((a, b), refs):
            err = abs(Fraction(val) - Fraction(ref[int(q)]))
            worst = max(worst, err)
            if err > tol:
                mismatches.append((int(q), val, ref[int(q)]))
    return worst, mismatches


def check_fig1(qs=(2, 3, 4, 5)) -> CheckRecord:
    rows = fig1_rows(qs)
    worst, bad = _compare_table(rows, (reference.MRD_DENSITY_UPPER_3x5_d3, reference.GENERIC_DENSITY_UPPER_3x5_k5_d3),
                                Fraction(1, 10**9))
    return CheckRecord(2, "density bounds for 3x5 codes match plotted values to 1e-9", {"q": list(qs)},
                       "abs error <= 1e-9", {"max_abs_error": float(worst), "mismatches": bad}, not bad,
                       "published-value")


def check_fig2(qs=(2, 3, 4, 5)) -> CheckRecord:
    rows = fig2_rows(qs)
    worst, bad = _compare_table(rows, (reference.EULER_POWER_M_BOUND_n3_d3, reference.MRD_DENSITY_UPPER_M_n3_d3),
                                Fraction(1, 10**6))
    widths = {q: float(pi_q_interval(q, Fraction(1, 10**9)).width) for q in qs}
    narrow = all(w <= 1e-9 for w in widths.values())
    # which bound is smaller, over every prime power up to 31
    eps = Fraction(1, 10**12)
    sharper = {}
    for q in (q for q in range(2, 32) if is_prime_power(q)):
        mine, prior = mrd_density_upper_m(3, 3, q, eps), euler_power_m_bound(3, 3, q, eps)
        sharper[q] = True if mine < prior else False if mine > prior else None
    crossover = all(sharper[q] is (q >= 9) for q in sharper)
    got = {"max_abs_error": float(worst), "mismatches": bad, "pi_widths": widths,
           "large_m_bound_sharper": sharper}
    return CheckRecord(3, "large-m bounds match plotted values to 1e-6; crossover at q=9", {"q": list(qs)},
                       {"tolerance": 1e-6, "pi_width": 1e-9, "sharper_from": 9}, got,
                       not bad and narrow and crossover, "published-value")


# --- 4, 5 ----------------------------------------------------------------------


def check_nu(Ns=(3, 4, 5), qs=(2, 3)) -> CheckRecord:
    bad = []
    checked = 0
    for q in qs:
        for N in Ns:
            for k in range(1, N):
                for l, seen in nu_census(N, k, q).items():
                    checked += 1
                    want = nu(N, k, l, q)
                    if seen != {want}:
                        bad.append({"N": N, "k": k, "l": l, "q": q, "census": sorted(seen), "formula": want})
    spot = [nu(5, 3, l, 2) for l in (0, 1, 2)]
    ok = not bad and spot == [51, 59, 91]
    return CheckRecord(4, "intersecting-both counts equal nu", {"N": list(Ns), "q": list(qs)},
                       {"nu_2(5,3,.)": [51, 59, 91]}, {"cases": checked, "mismatches": bad, "nu_2(5,3,.)": spot},
                       ok, "independent-count")


def check_theta(ns=(1, 2, 3, 4), qs=(2, 3)) -> CheckRecord:
    bad = []
    for q in qs:
        for n in ns:
            for u in range(n + 1):
                lo = max(0, 2 * u - n)
                formula = {i: theta(n, u, i, q) for i in range(lo, u + 1)}
                if sum(formula.values()) != qbinom(n, u, q) ** 2:
                    bad.append({"n": n, "u": u, "q": q, "issue": "sum"})
                census = theta_census(n, u, q)
                if {i: c for i, c in formula.items() if c} != census:
                    bad.append({"n": n, "u": u, "q": q, "census": census, "formula": formula})
    return CheckRecord(5, "theta sums to qbinom^2 and matches pair census", {"n": list(ns), "q": list(qs)},
                       "no mismatches", {"mismatches": bad}, not bad, "independent-count")


# --- 6, 7 ----------------------------------------------------------------------


def check_mrd(threads: int = 4, big: bool = True) -> CheckRecord:
    small = mrd_census(2, 2, 2, 2, threads=1)
    got = {"(2,2,2,2)": small.counts["count"]}
    ok = small.counts["count"] == 2 and small.counts["complement_path"] == 2
    expected = {"(2,2,2,2)": 2}
    if big:
        res = mrd_census(3, 3, 3, 2, threads=threads)
        c = res.counts
        got["(3,3,3,2)"] = c["count"]
        got["density"] = c["density"]
        got["closed_form"] = delta_3x3_exact(2)
        got["paths_agree"] = c["count"] == c["complement_path"]
        got["total"] = c["total"]
        expected["(3,3,3,2)"] = 192
        ok = ok and c["count"] == 192 and c["density"] == delta_3x3_exact(2) == Fraction(24192, 99292410)
        ok = ok and c["total"] == 788035 and c["count"] == c["complement_path"]
    return CheckRecord(6, "MRD censuses by rank filter and by common complements", {"threads": threads},
                       expected, got, ok, "independent-count")


def check_duality(threads: int = 4, big: bool = True) -> CheckRecord:
    cases = [(2, 3, 2)] + ([(3, 3, 3)] if big else [])
    got = {}
    ok = True
    for n, m, d in cases:
        r = dual_census(n, m, d, 2, threads=threads)
        got[f"({n},{m},{d},2)"] = {**r.counts, **r.extra}
        ok = ok and r.counts["count"] == r.counts["dual_count"] and r.counts["density"] == r.counts["dual_density"]
        ok = ok and all(r.extra.values())
    if big:
        ok = ok and got["(3,3,3,2)"]["count"] == 192
    return CheckRecord(7, "dual codes: equal densities at the dual parameters", {"cases": cases},
                       {"(3,3,3,2)": {"count": 192, "dual_count": 192}} if big else "equal counts", got, ok,
                       "independent-count")


# --- 8 -------------------------------------------------------------------------


def _random_instance(rng: random.Random):
    while True:
        q = rng.choice((2, 3))
        N = rng.randint(3, 6)
        k = rng.randint(1, N - 1)
        if qbinom(N, k, q) <= 10**5 and qbinom(N, N - k, q) >= 1:
            return q, N, k


def check_sandwich(samples: int = 200, seed: int = 20240601) -> CheckRecord:
    rng = random.Random(seed)
    violations = []
    families = cones = 0
    for i in range(samples):
        q, N, k = _random_instance(rng)
        F = GF(q)
        total = qbinom(N, k, q)
        if i % 2 == 0:
            families += 1
            s = rng.randint(1, min(8, qbinom(N, N - k, q)))
            fam = random_family(rng, N, N - k, s, F)
            prof = intersection_profile(fam)
            comps, meeting = count_common_complements(fam, k)
            reports = [cc_bounds(prof, q).check(meeting)]
            if s >= 2:
                lm = cc_bounds_lmax(s, prof.l_max, N, k, q).check(meeting)
                reports.append(lm)
                if reports[0].lower < lm.lower:
                    violations.append({"sample": i, "issue": "profile bound below l_max bound"})
            if s <= q and comps < tingley_lower(s, q):
                violations.append({"sample": i, "issue": "fewer complements than q+1-s", "q": q, "s": s})
        else:
            cones += 1
            pts = rng.randint(1, min(12, (q**N - 1) // (q - 1)))
            codes = random_cone_codes(rng, N, F, pts)
            cone = Cone(lambda v, c=codes, q=q: vector_code(v, q) in c, len(codes))
            meeting = total - count_distinguishing_cone(cone, N, k, F)
            reports = [cone_bounds(len(codes), N, k, q).check(meeting)]
        for r in reports:
            if r.verdict != "within-bounds":
                violations.append({"sample": i, "params": r.params, "count": meeting,
                                   "lower": r.lower_int, "upper": r.upper_int})
    return CheckRecord(8, "oracle counts lie inside every bound", {"samples": samples, "seed": seed},
                       {"violations": 0}, {"families": families, "cones": cones, "violations": violations},
                       not violations, "independent-count")


# --- 9 -------------------------------------------------------------------------


def _deviation(exact: Fraction, est: Fraction) -> Fraction:
    return abs(Fraction(exact) / est - 1)


def trend_table(Nk=((6, 3), (5, 2)), qs=TREND_QS) -> list[dict]:
    """Relative deviation of each large-q estimate along ``qs``."""
    out = []
    for N, k in Nk:
        for l in range(max(0, N - 2 * k), N - k + 1):
            for label, exact, est in (("nu", nu, nu_asym_q), ("gap", delta_gap, delta_asym_q)):
                devs = [_deviation(exact(N, k, l, q), est(N, k, l, q)) for q in qs]
                out.append({
                    "N": N, "k": k, "l": l, "quantity": label,
                    "deviations": [round(float(x), 4) for x in devs],
                    "decreasing": all(a >= b for a, b in zip(devs, devs[1:])),
                    "final_below_0.15": devs[-1] < Fraction(15, 100),
                })
    return out


def check_trends(include_q_trend: bool = True) -> CheckRecord:
    parts = {}
    ok = True
    if include_q_trend:
        table = trend_table()
        failing = [r for r in table if not (r["decreasing"] and r["final_below_0.15"])]
        parts["large_q_estimates"] = {"cases": len(table), "failing": failing}
        ok = ok and not failing
    pi = pi_q_interval(2, Fraction(1, 10**12))
    ratios = {m: Fraction(qbinom(2 * m, m, 2), 2 ** (m * m)) for m in (4, 6, 8)}
    below = all(pi > r for r in ratios.values())
    increasing = ratios[4] < ratios[6] < ratios[8]
    within = abs(ratios[8] / pi.mid - 1) < Fraction(1, 100)
    parts["qbinom_over_pi"] = {"ratios": {m: float(r) for m, r in ratios.items()}, "pi": float(pi.mid),
                               "below": below, "increasing": increasing, "within_1pct_at_8": within}
    ok = ok and below and increasing and within
    qs = [q for q in range(2, 33) if is_prime_power(q)]
    scaled = {}
    bounded = True
    for n, m, d in ((3, 3, 2), (3, 4, 2), (3, 3, 3), (3, 4, 3)):
        e = (d - 1) * (n - d + 1) - 1
        vals = [q**e * mrd_density_upper_q(n, m, d, q) for q in qs]
        scaled[f"({n},{m},{d})"] = [round(float(v), 4) for v in vals]
        bounded = bounded and all(0 < v <= 1 for v in vals)
    parts["scaled_mrd_bound"] = {"q": qs, "values": scaled, "all_in_(0,1]": bounded}
    ok = ok and bounded
    return CheckRecord(9, "asymptotic trend checks", {"q": list(TREND_QS)},
                       {"deviation_decreasing_and_below_0.15_at_13": True, "qbinom_ratio_within_1pct": True,
                        "scaled_bound_at_most_1": True}, parts, ok, "trend")


# --- 10 ------------------------------------------------------------------------


def check_functionals(N: int = 4, rs=(1, 2, 3)) -> CheckRecord:
    F = GF(2)
    spaces = list(all_subspaces(N, F))
    bad = []
    tau = {(r, U): tau_census(r, U) for r in rs for U in spaces}
    for (r, U), t in tau.items():
        if t != tau_linear(r, U.dim, N, 2):
            bad.append({"r": r, "dim": U.dim, "census": t})
    pairs = 0
    for A, B in itertools.combinations_with_replacement(spaces, 2):
        C = meet(A, B)
        for r in rs:
            pairs += 1
            union = tau_union_census(r, A, B)
            if union * tau[(r, C)] != tau[(r, A)] * tau[(r, B)]:
                bad.append({"r": r, "A": A.basis, "B": B.basis, "union": union})
    division = 0
    for k in range(1, N):
        for A, B in itertools.combinations_with_replacement([U for U in spaces if U.dim == N - k], 2):
            division += 1
            res = functional_division_check([A, B], k)
            if not res["ok"]:
                bad.append({"division": res, "k": k})
    return CheckRecord(10, "functional-tuple counts match the closed form and the product identity",
                       {"N": N, "q": 2, "r": list(rs)}, "no mismatches",
                       {"single_counts": len(tau), "pair_checks": pairs, "division_checks": division,
                        "mismatches": bad}, not bad, "independent-count")


# --- runner --------------------------------------------------------------------


def run(level: str = "full", threads: int = 4, only: set[int] | None = None) -> VerificationReport:
    if level not in ("smoke", "full"):
        raise ValueError(f"unknown level {level!r}")
    full = level == "full"
    plan = [
        (1, lambda: check_worked_example(), 1.0),
        (2, lambda: check_fig1(), 10.0),
        (3, lambda: check_fig2(), 10.0),
        (4, lambda: check_nu(qs=(2, 3) if full else (2,)), 120.0),
        (5, lambda: check_theta(), 60.0),
        (6, lambda: check_mrd(threads, big=full), 300.0),
        (7, lambda: check_duality(threads, big=full), 600.0),
        (8, lambda: check_sandwich(200 if full else 40), None),
        (9, lambda: check_trends(include_q_trend=full), None),
        (10, lambda: check_functionals(), 60.0),
    ]
    t0 = time.perf_counter()
    records = [_timed(fn, limit) for cid, fn, limit in plan if only is None or cid in only]
    return VerificationReport(level, records, time.perf_counter() - t0)
