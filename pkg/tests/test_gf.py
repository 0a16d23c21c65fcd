from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdense.errors import PreconditionError
from qdense.gf import (
    GF,
    MatrixGF,
    enumerate_subspaces,
    field_make,
    flat_rank,
    full_space,
    join,
    matrix_space_of_column_space,
    meet,
    orthogonal_complement,
    pivot_sets,
    rank,
    rref,
    span,
    zero_space,
)
from qdense.qfunc import qbinom

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_field_make_prime_field():
    F = field_make(2, 1)
    assert F.q == 2
    assert F.modulus == (0, 1)  # x


def test_field_make_gf4_modulus():
    assert field_make(2, 2).modulus == (1, 1, 1)  # x^2 + x + 1


def test_gf9_distributive_exhaustive():
    F = field_make(3, 2)
    assert F.q == 9
    for a, b, c in itertools.product(range(9), repeat=3):
        assert F.mul(F.add(a, b), c) == F.add(F.mul(a, c), F.mul(b, c))


@pytest.mark.parametrize("q", SMALL_Q)
def test_field_axioms(q):
    F = GF(q)
    els = range(q)
    for a in els:
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
    for a, b, c in itertools.product(els, repeat=3):
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))


def test_field_make_rejects():
    with pytest.raises(PreconditionError):
        field_make(4, 1)
    with pytest.raises(PreconditionError):
        field_make(2, 17)
    with pytest.raises(PreconditionError):
        GF(6)


def test_rref_examples():
    F = GF(2)
    R, piv, r = rref(MatrixGF(F, ((0, 0, 0), (0, 0, 0))))
    assert r == 0 and piv == ()
    ident = MatrixGF(F, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    R, piv, r = rref(ident)
    assert R == ident and piv == (0, 1, 2) and r == 3
    assert rref(MatrixGF(F, ((1, 1, 0), (0, 1, 1), (1, 0, 1))))[2] == 2


def test_matrix_validation():
    with pytest.raises(PreconditionError):
        MatrixGF(GF(2), ((0, 2),))
    with pytest.raises(PreconditionError):
        MatrixGF(GF(2), ())


def test_span_examples():
    assert span([], 4, GF(2)).dim == 0
    assert span([(1, 0), (0, 1)], 2, GF(3)) == full_space(2, GF(3))
    U = span([(1, 1, 0, 0), (1, 1, 1, 1)], 4, GF(2))
    assert U.dim == 2
    assert U.basis == ((1, 1, 0, 0), (0, 0, 1, 1))


def test_span_rejects_ragged():
    with pytest.raises(PreconditionError):
        span([(1, 0), (1, 0, 0)], 2, GF(2))


def test_meet_join_examples():
    F = GF(2)
    U = span([(1, 0, 1, 0), (0, 1, 1, 1)], 4, F)
    assert meet(U, U) == U == join(U, U)
    A = span([(1, 0, 0, 0), (0, 1, 0, 0)], 4, F)
    B = span([(0, 0, 1, 0), (0, 0, 0, 1)], 4, F)
    assert meet(A, B).dim == 0 and join(A, B).dim == 4
    planes = list(enumerate_subspaces(3, 2, F))
    for P, Q in itertools.combinations(planes, 2):
        assert meet(P, Q).dim == 1


def test_meet_rejects_mismatch():
    with pytest.raises(PreconditionError):
        meet(zero_space(3, GF(2)), zero_space(4, GF(2)))


@pytest.mark.parametrize("N,k,q,count", [(3, 2, 2, 7), (5, 3, 2, 155), (4, 2, 2, 35)])
def test_enumeration_examples(N, k, q, count):
    assert sum(1 for _ in enumerate_subspaces(N, k, GF(q))) == count


@pytest.mark.parametrize(
    "N,k,q",
    [(N, k, q) for q in (2, 3, 4, 5) for N in range(0, 7) for k in range(N + 1) if qbinom(N, k, q) <= 20000],
)
def test_enumeration_counts_and_distinct(N, k, q):
    subs = list(enumerate_subspaces(N, k, GF(q)))
    assert len(subs) == qbinom(N, k, q)
    assert len(set(subs)) == len(subs)
    assert all(U.dim == k for U in subs)


def test_enumeration_order_is_colex_pivots():
    seen = [U.pivots for U in enumerate_subspaces(4, 2, GF(2))]
    order = pivot_sets(4, 2)
    assert [p for p, _ in itertools.groupby(seen)] == order
    assert order[:3] == [(0, 1), (0, 2), (1, 2)]


def test_enumeration_rejects_bad_k():
    with pytest.raises(PreconditionError):
        list(enumerate_subspaces(3, 4, GF(2)))


def test_column_space_examples():
    F = GF(2)
    assert matrix_space_of_column_space(zero_space(2, F), 2).dim == 0
    assert matrix_space_of_column_space(full_space(3, F), 3) == full_space(9, F)
    U = span([(1, 0)], 2, F)
    W = matrix_space_of_column_space(U, 2)
    assert W.dim == 2
    for v in W.vectors():
        assert v[2:] == (0, 0)
        assert flat_rank(v, 2, 2, F) <= 1


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 3)])
def test_column_space_ranks_bounded(n, m):
    F = GF(2)
    for u in range(n + 1):
        for U in enumerate_subspaces(n, u, F):
            W = matrix_space_of_column_space(U, m)
            assert W.dim == m * u
            assert all(flat_rank(v, n, m, F) <= u for v in W.vectors())


def test_orthogonal_complement_dims():
    for q in (2, 3, 4):
        F = GF(q)
        for U in enumerate_subspaces(4, 2, F):
            C = orthogonal_complement(U)
            assert C.dim == 2
            for a in U.basis:
                for b in C.basis:
                    acc = 0
                    for x, y in zip(a, b):
                        acc = F.add(acc, F.mul(x, y))
                    assert acc == 0


# --- properties ------------------------------------------------------------------


@st.composite
def vectors(draw, q, N, count):
    return [tuple(draw(st.integers(0, q - 1)) for _ in range(N)) for _ in range(count)]


@st.composite
def subspace_pair(draw):
    q = draw(st.sampled_from([2, 3, 4, 5, 7, 9]))
    N = draw(st.integers(1, 6))
    F = GF(q)
    a = draw(vectors(q, N, draw(st.integers(0, N))))
    b = draw(vectors(q, N, draw(st.integers(0, N))))
    return span(a, N, F), span(b, N, F)


@settings(max_examples=150, deadline=None)
@given(subspace_pair())
def test_modular_law(pair):
    U, V = pair
    assert U.dim + V.dim == meet(U, V).dim + join(U, V).dim
    assert meet(U, V).le(U) and meet(U, V).le(V)
    assert U.le(join(U, V)) and V.le(join(U, V))


@settings(max_examples=150, deadline=None)
@given(subspace_pair())
def test_canonical_form_idempotent(pair):
    U, _ = pair
    again = span(U.basis, U.N, U.field)
    assert again == U and again.basis == U.basis and again.pivots == U.pivots
    assert list(U.pivots) == sorted(U.pivots)
    assert len(set(U.pivots)) == len(U.pivots)


@settings(max_examples=100, deadline=None)
@given(subspace_pair())
def test_rank_matches_dimension(pair):
    U, V = pair
    gens = list(U.basis) + list(V.basis)
    assert rank(gens, U.field) == join(U, V).dim
    assert sum(1 for _ in U.vectors()) == U.q ** U.dim


@settings(max_examples=100, deadline=None)
@given(subspace_pair())
def test_double_orthogonal_complement(pair):
    U, _ = pair
    assert orthogonal_complement(orthogonal_complement(U)) == U
    assert orthogonal_complement(U).dim == U.N - U.dim
