from __future__ import annotations

import json
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdense.bounds import cc_bounds, cc_bounds_lmax, cone_bounds, corollary_bound, decomposition_rhs
from qdense.errors import BudgetExceeded, PreconditionError
from qdense.families import (
    line_spread,
    random_cone_codes,
    random_family,
    random_subspace,
    subspaces_of_coordinate_space,
)
from qdense.gf import GF, enumerate_subspaces, flat_rank, full_space, span, vector_code, zero_space
from qdense.oracle import (
    Cone,
    FamilySpec,
    MatrixCode,
    code_census,
    count_common_complements,
    count_distinguishing_cone,
    count_distinguishing_functionals,
    dual_code,
    functional_division_check,
    intersection_profile,
    min_distance,
    mrd_census,
    mrd_family,
    nu_census,
    rank_ball_cone,
    special_basis,
    split,
    tau_census,
    theta_census,
    union_cone,
)
from qdense.qfunc import nu, qbinom, tau_linear, theta

F2 = GF(2)
I2 = ((1, 0), (0, 1))
X2 = ((0, 1), (1, 1))  # companion matrix of x^2 + x + 1


def _companion_code():
    return MatrixCode.from_matrices([I2, X2], 2, 2, F2)


# --- minimum distance --------------------------------------------------------------


def test_min_distance_examples():
    M = ((1, 0, 0), (0, 1, 0), (0, 0, 0))
    assert MatrixCode.from_matrices([M], 3, 3, F2).min_distance == 2
    code = _companion_code()
    assert code.min_distance == 2
    assert all(flat_rank(v, 2, 2, F2) == 2 for v in code.space.vectors() if any(v))
    assert MatrixCode(full_space(4, F2), 2, 2).min_distance == 1
    with pytest.raises(PreconditionError):
        min_distance(MatrixCode(zero_space(4, F2), 2, 2))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([2, 3]), st.integers(1, 4))
def test_min_distance_matches_codeword_scan(seed, q, k):
    rng = random.Random(seed)
    F = GF(q)
    code = MatrixCode(random_subspace(rng, 6, k, F), 2, 3)
    ranks = [flat_rank(v, 2, 3, F) for v in code.space.vectors() if any(v)]
    assert code.min_distance == min(ranks)


# --- complements -------------------------------------------------------------------


@pytest.mark.parametrize("build", [lambda: line_spread(F2, 5), lambda: subspaces_of_coordinate_space(F2, 5, 3, 2)])
def test_worked_example_censuses(build):
    comps, meeting = count_common_complements(build(), 3)
    assert (comps, meeting) == (0, 155)


@pytest.mark.parametrize("N,k,q", [(4, 2, 2), (5, 3, 2), (4, 1, 3), (5, 2, 3), (4, 2, 4)])
def test_single_member_complements(N, k, q):
    F = GF(q)
    A = span([tuple(int(i == j) for j in range(N)) for i in range(N - k)], N, F)
    comps, meeting = count_common_complements(FamilySpec(F, N, (A,)), k)
    assert comps == q ** (k * (N - k))
    assert meeting == nu(N, k, N - k, q)


def test_complement_dimension_mismatch():
    with pytest.raises(PreconditionError):
        count_common_complements(line_spread(F2, 5), 2)


def test_family_validation_and_json():
    fam = line_spread(F2, 5)
    again = FamilySpec.from_json(json.dumps(fam.to_dict()))
    assert again.members == fam.members and again.field == fam.field
    A = fam.members[0]
    with pytest.raises(PreconditionError):
        FamilySpec(F2, 5, (A, A))
    with pytest.raises(PreconditionError):
        FamilySpec(F2, 5, (A, span([(1, 0, 0, 0, 0)], 5, F2)))
    with pytest.raises(PreconditionError):
        FamilySpec.from_dict({"q": 4, "p": 2, "e": 1, "N": 3, "members": [[[1, 0, 0]]]})


def test_intersection_profiles():
    assert intersection_profile(line_spread(F2, 5)).counts == {0: 20, 2: 5}
    assert intersection_profile(subspaces_of_coordinate_space(F2, 5, 3, 2)).counts == {1: 42, 2: 7}
    for n, m, d in [(3, 3, 2), (3, 3, 3), (2, 3, 2)]:
        prof = intersection_profile(mrd_family(n, m, d, F2))
        assert all(l % m == 0 for l in prof.counts)


# --- cones -------------------------------------------------------------------------


def test_cone_trivial_cases():
    N, k = 4, 2
    zero = Cone(lambda v: not any(v), 1)
    assert count_distinguishing_cone(zero, N, k, F2) == qbinom(N, k, 2)
    every = Cone(lambda v: True, 2**N)
    assert count_distinguishing_cone(every, N, k, F2) == 0


def test_cone_rank_ball_gives_mrd_codes():
    assert count_distinguishing_cone(rank_ball_cone(2, 2, 1, F2), 4, 2, F2) == 2


def test_cone_spot_checks():
    with pytest.raises(PreconditionError):
        count_distinguishing_cone(Cone(lambda v: v == (1, 0, 0), 2), 3, 1, F2)  # no zero
    with pytest.raises(PreconditionError):
        count_distinguishing_cone(Cone(lambda v: not any(v), 5), 3, 1, F2)  # wrong size
    F3 = GF(3)
    not_closed = Cone(lambda v: v in {(0, 0, 0), (1, 0, 0)}, 2)
    with pytest.raises(PreconditionError):
        count_distinguishing_cone(not_closed, 3, 1, F3)


# --- sandwich ------------------------------------------------------------------------


@st.composite
def small_instance(draw):
    q = draw(st.sampled_from([2, 3]))
    N = draw(st.integers(3, 5))
    k = draw(st.integers(1, N - 1))
    seed = draw(st.integers(0, 2**32))
    return q, N, k, seed


@settings(max_examples=50, deadline=None)
@given(small_instance(), st.integers(1, 6))
def test_family_counts_inside_bounds(inst, s):
    q, N, k, seed = inst
    F = GF(q)
    s = min(s, qbinom(N, N - k, q))
    fam = random_family(random.Random(seed), N, N - k, s, F)
    prof = intersection_profile(fam)
    _, meeting = count_common_complements(fam, k)
    rep = cc_bounds(prof, q).check(meeting)
    assert rep.verdict == "within-bounds"
    if s >= 2:
        lm = cc_bounds_lmax(s, prof.l_max, N, k, q)
        assert lm.check(meeting).verdict == "within-bounds"
        assert rep.lower >= lm.lower


@settings(max_examples=50, deadline=None)
@given(small_instance(), st.integers(1, 10))
def test_cone_counts_inside_bounds(inst, points):
    q, N, k, seed = inst
    F = GF(q)
    points = min(points, (q**N - 1) // (q - 1))
    codes = random_cone_codes(random.Random(seed), N, F, points)
    cone = Cone(lambda v: vector_code(v, q) in codes, len(codes))
    meeting = qbinom(N, k, q) - count_distinguishing_cone(cone, N, k, F)
    assert cone_bounds(len(codes), N, k, q).check(meeting).verdict == "within-bounds"


# --- MRD censuses ----------------------------------------------------------------------


def test_mrd_census_2x2():
    res = mrd_census(2, 2, 2, 2)
    assert res.counts["count"] == 2 and res.counts["density"] == Fraction(2, 35)


@pytest.mark.parametrize("n,m,q", [(2, 2, 2), (2, 3, 2), (3, 3, 2), (2, 2, 3)])
def test_mrd_census_distance_one(n, m, q):
    res = mrd_census(n, m, 1, q)
    assert res.counts["count"] == 1 and res.counts["density"] == 1


@pytest.mark.parametrize("n,m,d,q", [(2, 2, 2, 3), (2, 3, 2, 2), (2, 2, 2, 4), (2, 3, 2, 3)])
def test_mrd_two_paths_agree_small(n, m, d, q):
    res = mrd_census(n, m, d, q)
    assert res.counts["count"] == res.counts["complement_path"] > 0


@pytest.mark.slow
def test_mrd_census_3x3():
    res = mrd_census(3, 3, 3, 2, threads=4)
    assert res.counts["count"] == 192
    assert res.counts["density"] == Fraction(192, 788035)
    assert res.counts["complement_path"] == 192


def test_budget_enforced(monkeypatch):
    with pytest.raises(BudgetExceeded):
        mrd_census(3, 3, 3, 2, budget=1000)
    monkeypatch.setenv("QDENSE_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        mrd_census(2, 2, 2, 2)


def test_census_deterministic_across_threads():
    a = code_census(2, 3, 3, 2, F2, threads=1, collect=True)
    b = code_census(2, 3, 3, 2, F2, threads=3, collect=True)
    assert a[0] == b[0] and [c.space for c in a[1]] == [c.space for c in b[1]]


# --- duals ---------------------------------------------------------------------------


def test_dual_of_full_space_is_zero():
    assert dual_code(MatrixCode(full_space(6, F2), 2, 3)).dim == 0


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([2, 3, 4]))
def test_double_dual(seed, q):
    rng = random.Random(seed)
    F = GF(q)
    k = rng.randint(0, 6)
    code = MatrixCode(random_subspace(rng, 6, k, F), 2, 3)
    D = dual_code(code)
    assert D.dim + code.dim == 6
    assert dual_code(D).space == code.space


def test_dual_uses_trace_form():
    F = GF(3)
    rng = random.Random(5)
    code = MatrixCode(random_subspace(rng, 6, 2, F), 2, 3)
    for A in code.matrices():
        for B in dual_code(code).matrices():
            tr = sum(A[i][j] * B[i][j] for i in range(2) for j in range(3)) % 3
            assert tr == 0


@pytest.mark.slow
def test_duals_of_3x3_mrd_codes():
    _, codes, _ = code_census(3, 3, 3, 3, F2, threads=4, collect=True)
    assert len(codes) == 192
    for c in codes:
        D = dual_code(c)
        assert D.dim == 6 and D.min_distance == 2


# --- special basis and split ------------------------------------------------------------


def test_special_basis_2x2():
    basis = special_basis(_companion_code())
    assert len(basis) == 2
    assert [b[:2] for b in basis] == [(1, 0), (0, 1)]
    assert all(flat_rank(b, 2, 2, F2) == 2 for b in basis)


def test_special_basis_shape_3x3():
    _, codes, _ = code_census(3, 3, 6, 2, F2, collect=True)
    for c in codes[:40]:
        basis = special_basis(c)
        for idx, b in enumerate(basis):
            top = b[:6]
            assert top == tuple(int(j == idx) for j in range(6))
            assert flat_rank(b, 3, 3, F2) == 2


def test_special_basis_rejects_non_mrd():
    with pytest.raises(PreconditionError):
        special_basis(MatrixCode(full_space(4, F2), 2, 2))


def test_split_of_3x3_distance_2_codes():
    _, codes, _ = code_census(3, 3, 6, 2, F2, collect=True)
    assert len(codes) == 192
    pairs = [split(c) for c in codes]
    for c1, c2 in pairs:
        assert (c1.n, c1.m, c1.dim, c1.min_distance) == (2, 3, 3, 2)
        assert (c2.n, c2.m, c2.dim, c2.min_distance) == (2, 3, 3, 2)
    assert len({(a.space, b.space) for a, b in pairs}) == len(pairs)


def test_split_needs_d_below_n():
    _, codes, _ = code_census(2, 2, 2, 2, F2, collect=True)
    with pytest.raises(PreconditionError):
        split(codes[0])


def test_decomposition_and_corollary_against_census():
    small = mrd_census(2, 3, 2, 2).counts["density"]
    big = mrd_census(3, 3, 2, 2).counts["density"]
    assert big <= decomposition_rhs(3, 3, 2, 2, small, small)
    assert big <= corollary_bound(3, 3, 2, 2, small)
    assert mrd_census(3, 3, 3, 2).counts["density"] <= corollary_bound(3, 3, 3, 2, small)


# --- functionals ---------------------------------------------------------------------


def test_functionals_examples():
    assert count_distinguishing_functionals([(0, 0, 0)], 2, 3, F2) == 2**6
    assert count_distinguishing_functionals([(1, 0, 0)], 2, 3, F2) == 48


@pytest.mark.parametrize("q", [2, 3, 4])
def test_crapo_rota_linear(q):
    F = GF(q)
    for N in range(1, 5 if q == 2 else 4):
        for k in range(N + 1):
            U = span([tuple(int(i == j) for j in range(N)) for i in range(k)], N, F)
            for r in range(1, 4):
                if q ** (r * N) > 2**16:
                    continue
                assert tau_census(r, U) == tau_linear(r, k, N, q)


def test_functional_budget():
    with pytest.raises(BudgetExceeded):
        count_distinguishing_functionals([(1,) * 10], 3, 10, GF(2), budget=2**20)


def test_division_identity():
    F = GF(3)
    A = span([(1, 0, 0, 0), (0, 1, 0, 0)], 4, F)
    B = span([(0, 1, 0, 0), (0, 0, 1, 0)], 4, F)
    res = functional_division_check([A, B], 2)
    assert res["ok"] and res["spaces"] * res["gl"] == res["tau"]


# --- pair censuses ---------------------------------------------------------------------


@pytest.mark.parametrize("N,k,q", [(3, 1, 2), (3, 2, 2), (4, 2, 2), (4, 1, 3), (5, 3, 2), (4, 2, 3)])
def test_nu_census(N, k, q):
    seen = nu_census(N, k, q)
    assert {l: min(v) for l, v in seen.items()} == {l: nu(N, k, l, q) for l in seen}
    assert all(len(v) == 1 for v in seen.values())


def test_nu_census_examples():
    assert nu_census(5, 3, 2) == {0: {51}, 1: {59}, 2: {91}}
    assert nu_census(4, 2, 2)[0] == {9}


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (3, 3), (4, 3)])
def test_theta_census(n, q):
    for u in range(n + 1):
        census = theta_census(n, u, q)
        formula = {i: theta(n, u, i, q) for i in range(max(0, 2 * u - n), u + 1)}
        assert census == {i: c for i, c in formula.items() if c}


def test_union_cone_size():
    fam = line_spread(F2, 5)
    cone = union_cone(fam.members)
    assert cone.size == 16
    assert count_distinguishing_cone(cone, 5, 3, F2) == 0


def test_rank_table_counts():
    from qdense.oracle import rank_table

    t = rank_table(2, 3, 3)
    counts = np.bincount(t)
    assert counts[0] == 1 and counts.sum() == 3**6
    assert counts[1] == qbinom(2, 1, 3) * (3**3 - 1)
    assert len(list(enumerate_subspaces(2, 1, GF(3)))) == 4
