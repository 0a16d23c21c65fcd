from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdense import reference
from qdense.bounds import (
    BoundReport,
    IntersectionProfile,
    ceil_fraction,
    cc_bounds,
    cc_bounds_lmax,
    classify_cc_asymptotics,
    complement_bounds,
    cone_bounds,
    corollary_bound,
    decomposition_rhs,
    delta_3x3_exact,
    duality_densities,
    euler_power_m_bound,
    generic_density_bounds,
    generic_density_upper_m,
    generic_regime,
    mrd_density_upper_m,
    mrd_density_upper_q,
    prior_bounds,
    section7_bounds,
    spread_ratio,
    tingley_lower,
)
from qdense.errors import PreconditionError
from qdense.figures import is_prime_power
from qdense.gf import GF, enumerate_subspaces, matrix_space_of_column_space, span
from qdense.qfunc import ball_size, nu, qbinom

PRIME_POWERS_32 = [q for q in range(2, 33) if is_prime_power(q)]
SPREAD = IntersectionProfile(5, 5, 3, {0: 20, 2: 5})
PLANES = IntersectionProfile(7, 5, 3, {1: 42, 2: 7})


def test_profile_validation():
    with pytest.raises(PreconditionError):
        IntersectionProfile(2, 5, 3, {2: 2, 0: 1})  # sum is not s^2
    with pytest.raises(PreconditionError):
        IntersectionProfile(2, 5, 3, {2: 1, 0: 3})  # diagonal too small
    with pytest.raises(PreconditionError):
        IntersectionProfile(2, 5, 3, {3: 2, 0: 2})  # dimension out of range
    with pytest.raises(PreconditionError):
        IntersectionProfile(3, 5, 3, {2: 3, 0: 5, 1: 1})  # odd off-diagonal count


def test_profile_json_roundtrip():
    d = json.loads(json.dumps(SPREAD.to_dict()))
    assert IntersectionProfile.from_dict(d) == SPREAD
    assert SPREAD.l_max == 0 and PLANES.l_max == 1


def test_cc_single_member():
    for N, k, q in [(5, 3, 2), (4, 2, 3), (6, 1, 4)]:
        rep = cc_bounds(IntersectionProfile(1, N, k, {N - k: 1}), q)
        assert rep.lower == rep.upper == nu(N, k, N - k, q)


def test_cc_worked_examples():
    assert cc_bounds(SPREAD, 2).lower_int == 141
    assert cc_bounds(PLANES, 2).lower_int == 131
    assert cc_bounds_lmax(5, 0, 5, 3, 2).lower_int == 141
    assert cc_bounds_lmax(7, 1, 5, 3, 2).lower_int == 131
    assert cc_bounds(SPREAD, 2).upper_int == 5 * nu(5, 3, 2, 2)


def test_cc_lmax_rejects_single():
    with pytest.raises(PreconditionError):
        cc_bounds_lmax(1, 0, 5, 3, 2)


def test_complement_bounds_from_counts():
    lo, hi = complement_bounds(cc_bounds(SPREAD, 2), 5, 3, 2)
    assert lo == 155 - 455 and hi == 155 - Fraction(8281, 59)


def test_cone_worked_examples():
    assert cone_bounds(16, 5, 3, 2).lower_int == 139
    assert cone_bounds(8, 5, 3, 2).lower_int == 112


@pytest.mark.parametrize("N,q", [(3, 2), (4, 3), (5, 4), (4, 7)])
def test_cone_single_line(N, q):
    rep = cone_bounds(q, N, N - 1, q)
    assert rep.upper == qbinom(N - 1, N - 2, q)


def test_cone_rejects_bad_size():
    with pytest.raises(PreconditionError):
        cone_bounds(6, 5, 3, 3)  # 5 is not a multiple of q - 1 = 2
    with pytest.raises(PreconditionError):
        cone_bounds(1, 5, 3, 2)


def test_tingley():
    assert tingley_lower(7, 7) == 1
    assert tingley_lower(1, 9) == 9
    with pytest.raises(PreconditionError):
        tingley_lower(4, 3)


def test_tingley_beaten_below_q():
    for q in (7, 8, 9, 11, 13, 16):
        for N in range(3, 6):
            for k in range(1, N):
                for s in range(1, q):
                    lo = qbinom(N, k, q) - s * nu(N, k, N - k, q)
                    assert lo >= tingley_lower(s, q)


def test_tingley_regime_where_cc_bound_is_negative():
    q, N, k = 5, 4, 2
    assert qbinom(N, k, q) - q * nu(N, k, N - k, q) < 0 < tingley_lower(q, q)


def test_mrd_q_examples():
    assert abs(mrd_density_upper_q(3, 5, 3, 2) - Fraction("0.057119330173")) < Fraction(1, 10**12)
    assert abs(mrd_density_upper_q(3, 5, 3, 3) - Fraction("0.089586066808")) < Fraction(1, 10**12)
    with pytest.raises(PreconditionError):
        mrd_density_upper_q(3, 5, 1, 2)


@pytest.mark.parametrize("q", PRIME_POWERS_32)
def test_mrd_q_below_generic(q):
    assert mrd_density_upper_q(3, 5, 3, q) < generic_density_bounds(3, 5, 5, 3, q).upper


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_mrd_q_below_one(q):
    for n in range(2, 5):
        for m in range(n, 5):
            for d in range(2, n + 1):
                assert 0 < mrd_density_upper_q(n, m, d, q) < 1


@pytest.mark.parametrize("q", sorted(reference.MRD_DENSITY_UPPER_3x5_d3))
def test_mrd_q_matches_plot(q):
    ref = Fraction(reference.MRD_DENSITY_UPPER_3x5_d3[q])
    assert abs(mrd_density_upper_q(3, 5, 3, q) - ref) < Fraction(1, 10**9)


@pytest.mark.parametrize("q", sorted(reference.GENERIC_DENSITY_UPPER_3x5_k5_d3))
def test_generic_matches_plot(q):
    ref = Fraction(reference.GENERIC_DENSITY_UPPER_3x5_k5_d3[q])
    assert abs(generic_density_bounds(3, 5, 5, 3, q).upper - ref) < Fraction(1, 10**9)


def test_generic_vacuous_lower_is_reported():
    rep = generic_density_bounds(3, 5, 5, 3, 2)
    assert rep.lower < 0 and rep.vacuous
    assert any("vacuous" in n for n in rep.notes)
    assert rep.lower <= rep.upper


def test_generic_regimes():
    # (d-1)(m+n-d+1) against mn-k
    assert generic_regime(3, 5, 5, 3) == "sparse"  # 14 >= 10 + 2
    assert generic_regime(3, 5, 8, 2) == "dense"  # 7 <= 7
    assert generic_regime(3, 5, 9, 2) == "undetermined"  # 7 = 6 + 1
    assert generic_regime(3, 3, 1, 2) == "dense"


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.data())
def test_generic_bounds_ordered(n, data):
    m = data.draw(st.integers(n, 4))
    d = data.draw(st.integers(2, n))
    k = data.draw(st.integers(1, m * n))
    q = data.draw(st.sampled_from([2, 3, 4, 5]))
    rep = generic_density_bounds(n, m, k, d, q)
    assert rep.lower <= rep.upper <= 1


def test_mrd_m_examples():
    eps = Fraction(1, 10**9)
    a = mrd_density_upper_m(3, 2, 2, eps)
    assert a.width <= eps and a.contains(Fraction("0.0548268869286"))
    b = mrd_density_upper_m(3, 3, 3, eps)
    assert b.contains(Fraction("0.0892135433490"))


def test_mrd_m_peaks_at_four_then_decreases():
    eps = Fraction(1, 10**12)
    qs = [q for q in PRIME_POWERS_32 if q <= 31]
    vals = [mrd_density_upper_m(3, 3, q, eps) for q in qs]
    top = qs.index(4)
    assert all(a < b for a, b in zip(vals[: top + 1], vals[1 : top + 1]))
    assert all(a > b for a, b in zip(vals[top:], vals[top + 1 :]))


@pytest.mark.parametrize("q", sorted(reference.MRD_DENSITY_UPPER_M_n3_d3))
def test_mrd_m_matches_plot(q):
    ref = Fraction(reference.MRD_DENSITY_UPPER_M_n3_d3[q])
    assert abs(mrd_density_upper_m(3, 3, q).mid - ref) < Fraction(1, 10**6)


@pytest.mark.parametrize("q", sorted(reference.EULER_POWER_M_BOUND_n3_d3))
def test_euler_power_matches_plot(q):
    ref = Fraction(reference.EULER_POWER_M_BOUND_n3_d3[q])
    assert abs(euler_power_m_bound(3, 3, q).mid - ref) < Fraction(1, 10**6)


def test_prior_bounds():
    labels = {b.label: b.value for b in prior_bounds(3, None, 3, 2)}
    iv = labels["euler-power (m->inf)"]
    assert iv.contains(Fraction("0.00200861374478225826545"))
    assert labels["half-refined (m->inf)"] == Fraction(1, 2)
    assert {b.label: b.value for b in prior_bounds(3, None, 3, 5)}["half-refined (m->inf)"] == Fraction(13, 32)
    exact = prior_bounds(3, 3, 3, 2)[0].value
    assert exact == Fraction(24192, 99292410) == Fraction(192, 788035)
    qinf = {b.label: b.value for b in prior_bounds(3, 3, 3, None)}
    assert qinf["half (q->inf)"] == Fraction(1, 2)
    assert qinf["alternating-exp-power (q->inf)"] == Fraction(1, 3) ** 2


def test_prior_regime_mismatch():
    with pytest.raises(PreconditionError):
        prior_bounds(3, None, 3, None)
    with pytest.raises(PreconditionError):
        prior_bounds(3, 4, 2, 2)


def test_crossover_at_nine():
    for q in PRIME_POWERS_32:
        mine, prior = mrd_density_upper_m(3, 3, q), euler_power_m_bound(3, 3, q)
        if q >= 9:
            assert mine < prior
        else:
            assert mine > prior


def test_delta_3x3_closed_form_small_q():
    assert delta_3x3_exact(2) * qbinom(9, 3, 2) == 192
    for q in (3, 4, 5):
        assert 0 < delta_3x3_exact(q) < mrd_density_upper_q(3, 3, 3, q)


@pytest.mark.parametrize("n,m,d", [(3, 3, 2), (3, 3, 3), (3, 4, 3), (3, 4, 2)])
def test_scaled_mrd_bound_stays_bounded(n, m, d):
    e = (d - 1) * (n - d + 1) - 1
    vals = [q**e * mrd_density_upper_q(n, m, d, q) for q in PRIME_POWERS_32]
    assert all(0 < v <= 1 for v in vals)


def test_generic_m_limit_is_limit():
    for q in (2, 3, 5):
        lim = generic_density_upper_m(3, 3, q)
        vals = [generic_density_bounds(3, m, m, 3, q).upper for m in (3, 6, 9)]
        assert abs(vals[-1] - lim) < abs(vals[0] - lim)


def test_classify_examples():
    assert classify_cc_asymptotics(5, 3, "o(q)").label == "complements-dense"
    assert classify_cc_asymptotics(5, 3, "q=o(A)", spread=True).label == "complements-sparse"
    v = classify_cc_asymptotics(5, 3, "~gamma*q", spread=True, gamma=1)
    assert v.label == "limsup-bound" and v.limsup == Fraction(1, 2)
    assert "may or may not be sparse" in v.explanation


def test_classify_intersection_bound():
    # N=6, k=3: l must satisfy 0 <= l < 2
    assert classify_cc_asymptotics(6, 3, "q=o(A)", l_bound=1).label == "complements-sparse"
    bad = classify_cc_asymptotics(6, 3, "q=o(A)", l_bound=2)
    assert bad.label == "undetermined" and "violates" in bad.explanation
    # N=4, k=2: l = 0 = N-k-1 is allowed
    assert classify_cc_asymptotics(4, 2, "q=o(A)", l_bound=0).label == "complements-sparse"
    with pytest.raises(PreconditionError):
        classify_cc_asymptotics(6, 3, "fast")


def test_spread_ratio_examples():
    F = GF(2)
    A = span([(1, 0, 0, 0), (0, 1, 0, 0)], 4, F)
    assert spread_ratio([A]) == 1
    B = span([(0, 0, 1, 0), (0, 0, 0, 1)], 4, F)
    C = span([(1, 0, 1, 0), (0, 1, 0, 1)], 4, F)
    s, dim = 3, 2
    assert spread_ratio([A, B, C]) == Fraction(1 + s * (2**dim - 1), s * 2**dim)
    fam = [matrix_space_of_column_space(U, 3) for U in enumerate_subspaces(3, 1, F)]
    assert spread_ratio(fam) == Fraction(ball_size(3, 3, 1, 2), 7 * 2**3)
    with pytest.raises(PreconditionError):
        spread_ratio([])


def test_section7_duality_symmetric_at_n_d_2():
    a, b = duality_densities(2, 3, 2, 2, 48, 48)
    assert a == b
    rep = section7_bounds("duality", 2, 3, 2, 2, count=48, dual_count=48)
    assert rep.verdict == "within-bounds"
    rep = section7_bounds("duality", 2, 3, 2, 2, count=48, dual_count=47)
    assert rep.verdict == "violated"


def test_section7_hypotheses():
    with pytest.raises(PreconditionError):
        decomposition_rhs(3, 3, 3, 2, Fraction(1), Fraction(1))  # needs d < n
    with pytest.raises(PreconditionError):
        corollary_bound(3, 3, 1, 2, Fraction(1))
    with pytest.raises(PreconditionError):
        section7_bounds("other", 3, 3, 2, 2)


def test_corollary_matches_decomposition_at_one_step():
    d1 = Fraction(16, 465)
    assert corollary_bound(3, 3, 2, 2, d1) == decomposition_rhs(3, 3, 2, 2, d1, d1)


def test_report_verdicts():
    rep = BoundReport({}, Fraction(7, 2), Fraction(21, 2))
    assert (rep.lower_int, rep.upper_int) == (4, 10)
    assert rep.verdict == "unchecked"
    assert rep.check(4).verdict == "within-bounds"
    assert rep.check(3).verdict == "violated"
    assert rep.check(11).verdict == "violated"
    d = rep.check(5).to_dict()
    assert d["lower"]["exact"] == "7/2" and d["lower"]["decimal"] == "3.500000000000"


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=-1000, max_value=1000))
def test_ceil_fraction(x):
    c = ceil_fraction(x)
    assert c - 1 < x <= c
