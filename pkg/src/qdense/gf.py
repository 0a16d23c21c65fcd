"""Finite fields, matrices over them, and canonical subspaces of F_q^N.

Field elements are integers ``0 <= a < q``.  For ``q = p^e`` the base-``p``
digits of ``a`` are the coefficients of a polynomial modulo the field's
irreducible modulus (digit ``i`` is the coefficient of ``x^i``), so for prime
fields an element is just its residue.

Vectors are tuples of elements.  Over ``F_2`` a vector is also available as
an int bitmask where bit ``j`` holds coordinate ``j``; the census code works
on masks.

Subspaces are stored by their reduced row-echelon basis, which makes
equality a plain comparison of bases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import PreconditionError

MAX_ORDER = 2**16
TABLE_THRESHOLD = 256

Vector = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --- polynomials over F_p, coefficient lists low -> high -------------------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _poly_trim(a)
    return a


def _digits(x: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _undigits(d: Sequence[int], p: int) -> int:
    x = 0
    for c in reversed(d):
        x = x * p + c
    return x


def _monic(idx: int, p: int, e: int) -> list[int]:
    return _digits(idx, p, e) + [1]


def _is_irreducible(f: list[int], p: int) -> bool:
    e = len(f) - 1
    if e <= 1:
        return True
    for deg in range(1, e // 2 + 1):
        for idx in range(p**deg):
            if not _poly_rem(f, _monic(idx, p, deg), p):
                return False
    return True


def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree ``e`` over F_p.

    Candidates are ordered by their coefficients read from ``x^(e-1)`` down
    to the constant term.
    """
    for idx in range(p**e):
        f = _monic(idx, p, e)
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _mulmod(a: int, b: int, modulus: Sequence[int], p: int, e: int) -> int:
    da, db = _digits(a, p, e), _digits(b, p, e)
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    r = _poly_rem(prod, list(modulus), p)
    return _undigits(r + [0] * (e - len(r)), p)


# --- fields ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The field F_q, q = p^e, with its arithmetic tables."""

    p: int
    e: int
    modulus: tuple[int, ...]
    exp_table: tuple[int, ...] = field(repr=False)
    log_table: tuple[int, ...] = field(repr=False)
    add_table: np.ndarray | None = field(repr=False, default=None)
    mul_table: np.ndarray | None = field(repr=False, default=None)
    neg_table: tuple[int, ...] | None = field(repr=False, default=None)
    inv_table: tuple[int, ...] | None = field(repr=False, default=None)

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        out, place = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * place
            place *= p
        return out

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return _undigits([(-d) % self.p for d in _digits(a, self.p, self.e)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self.exp_table[(-self.log_table[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def elements(self) -> range:
        return range(self.q)


@lru_cache(maxsize=None)
def field_make(p: int, e: int = 1, max_order: int = MAX_ORDER) -> FieldSpec:
    """Build F_{p^e} with the least irreducible modulus."""
    if not is_prime(p):
        raise PreconditionError(f"characteristic {p} is not prime")
    if e < 1:
        raise PreconditionError("extension degree must be >= 1")
    q = p**e
    if q > max_order:
        raise PreconditionError(f"field order {q} exceeds maximum {max_order}")
    modulus = least_irreducible(p, e)

    if e == 1:
        exp_t: tuple[int, ...] = ()
        log_t: tuple[int, ...] = ()
    else:
        exp_t, log_t = _log_tables(p, e, modulus)

    spec = FieldSpec(p, e, modulus, exp_t, log_t)
    if q <= TABLE_THRESHOLD:
        add = np.array([[spec.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
        mul = np.array([[spec.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
        neg = tuple(spec.neg(a) for a in range(q))
        inv = (0,) + tuple(spec.inv(a) for a in range(1, q))
        add.flags.writeable = False
        mul.flags.writeable = False
        spec = FieldSpec(p, e, modulus, exp_t, log_t, add, mul, neg, inv)
    return spec


def _log_tables(p: int, e: int, modulus: tuple[int, ...]):
    q = p**e
    for g in range(2, q):
        exp = [1]
        x = g
        while x != 1:
            exp.append(x)
            x = _mulmod(x, g, modulus, p, e)
        if len(exp) == q - 1:
            log = [-1] * q
            for i, a in enumerate(exp):
                log[a] = i
            return tuple(exp), tuple(log)
    raise AssertionError("no primitive element")  # pragma: no cover


def GF(q: int) -> FieldSpec:
    """Field of order ``q`` given as a prime power."""
    if q < 2:
        raise PreconditionError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise PreconditionError(f"{q} is not a prime power")
            return field_make(p, e)
    raise AssertionError  # pragma: no cover


# --- vectors -------------------------------------------------------------------


def vector_code(v: Sequence[int], q: int) -> int:
    """Integer code sum v_j q^j; over F_2 this is the bitmask."""
    c = 0
    for x in reversed(v):
        c = c * q + x
    return c


def code_vector(c: int, N: int, q: int) -> Vector:
    out = []
    for _ in range(N):
        c, r = divmod(c, q)
        out.append(r)
    return tuple(out)


def mask_of(v: Sequence[int]) -> int:
    return sum(1 << j for j, x in enumerate(v) if x)


def vector_of_mask(mask: int, N: int) -> Vector:
    return tuple((mask >> j) & 1 for j in range(N))


# --- matrices ------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixGF:
    field: FieldSpec
    rows: tuple[Vector, ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise PreconditionError("matrix dimensions must be positive")
        c = len(self.rows[0])
        q = self.field.q
        for row in self.rows:
            if len(row) != c:
                raise PreconditionError("ragged matrix")
            if any(not 0 <= x < q for x in row):
                raise PreconditionError("entry is not a field element")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @classmethod
    def of(cls, F: FieldSpec, rows: Iterable[Iterable[int]]) -> "MatrixGF":
        return cls(F, tuple(tuple(r) for r in rows))


def gf2_reduce(masks: Iterable[int]) -> list[int]:
    """Canonical RREF of bitmask rows over F_2, sorted by pivot (lowest bit)."""
    basis: list[int] = []
    for v in masks:
        for b in basis:
            if v & (b & -b):
                v ^= b
        if v:
            pb = v & -v
            basis = [b ^ v if b & pb else b for b in basis]
            basis.append(v)
    basis.sort(key=lambda b: b & -b)
    return basis


def gf2_rank(masks: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    for v in masks:
        while v:
            pb = v & -v
            b = pivots.get(pb)
            if b is None:
                pivots[pb] = v
                break
            v ^= b
    return len(pivots)


def _rref_general(rows: Sequence[Sequence[int]], ncols: int, F: FieldSpec):
    work = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, len(work)) if work[i][c]), None)
        if sel is None:
            continue
        work[r], work[sel] = work[sel], work[r]
        inv = F.inv(work[r][c])
        if inv != 1:
            work[r] = [F.mul(inv, x) for x in work[r]]
        prow = work[r]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = F.neg(work[i][c])
                work[i] = [F.add(x, F.mul(f, y)) for x, y in zip(work[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return [tuple(w) for w in work[:r]], pivots


def rref_rows(rows: Sequence[Sequence[int]], ncols: int, F: FieldSpec):
    """Nonzero RREF rows and pivot columns of the row space of ``rows``."""
    if F.q == 2:
        red = gf2_reduce(mask_of(r) for r in rows)
        return [vector_of_mask(b, ncols) for b in red], [(b & -b).bit_length() - 1 for b in red]
    return _rref_general(rows, ncols, F)


def rref(M: MatrixGF) -> tuple[MatrixGF, tuple[int, ...], int]:
    """Reduced row-echelon form, pivot columns and rank of ``M``."""
    r, c = M.shape
    nz, pivots = rref_rows(M.rows, c, M.field)
    zero = (0,) * c
    out = MatrixGF(M.field, tuple(nz) + (zero,) * (r - len(nz)))
    return out, tuple(pivots), len(pivots)


def rank(rows: Sequence[Sequence[int]], F: FieldSpec) -> int:
    if not rows:
        return 0
    if F.q == 2:
        return gf2_rank(mask_of(r) for r in rows)
    return len(_rref_general(rows, len(rows[0]), F)[1])


# --- subspaces -----------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^N held by its canonical RREF basis."""

    field: FieldSpec
    N: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...] = field(compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def matrix(self) -> MatrixGF:
        return MatrixGF(self.field, self.basis)

    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(b) for b in self.basis)

    def __repr__(self) -> str:
        return f"Subspace(q={self.q}, N={self.N}, basis={list(self.basis)})"

    def combination(self, coeffs: Sequence[int]) -> Vector:
        F = self.field
        out = [0] * self.N
        for c, b in zip(coeffs, self.basis):
            if c:
                out = [F.add(x, F.mul(c, y)) for x, y in zip(out, b)]
        return tuple(out)

    def vectors(self) -> Iterator[Vector]:
        """All q^dim vectors, coefficients in odometer order."""
        for coeffs in itertools.product(range(self.q), repeat=self.dim):
            yield self.combination(coeffs)

    def projective_points(self) -> Iterator[Vector]:
        """One nonzero representative of each 1-dimensional subspace."""
        k = self.dim
        for lead in range(k):
            for rest in itertools.product(range(self.q), repeat=k - lead - 1):
                yield self.combination((0,) * lead + (1,) + rest)

    def codes(self) -> np.ndarray:
        """Sorted integer codes of all elements (see :func:`vector_code`)."""
        return element_codes(self)

    def contains(self, v: Sequence[int]) -> bool:
        return rank(list(self.basis) + [tuple(v)], self.field) == self.dim

    def le(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)


def _from_rref(F: FieldSpec, N: int, rows: Sequence[Vector], pivots: Sequence[int]) -> Subspace:
    return Subspace(F, N, tuple(rows), tuple(pivots))


def span(generators: Iterable[Sequence[int]], N: int, F: FieldSpec) -> Subspace:
    """Canonical subspace spanned by ``generators``."""
    gens = [tuple(g) for g in generators]
    q = F.q
    for g in gens:
        if len(g) != N:
            raise PreconditionError(f"vector of length {len(g)} in ambient dimension {N}")
        if any(not 0 <= x < q for x in g):
            raise PreconditionError("entry is not a field element")
    rows, pivots = rref_rows(gens, N, F)
    return _from_rref(F, N, rows, pivots)


def zero_space(N: int, F: FieldSpec) -> Subspace:
    return _from_rref(F, N, (), ())


def full_space(N: int, F: FieldSpec) -> Subspace:
    return _from_rref(F, N, [tuple(int(i == j) for j in range(N)) for i in range(N)], range(N))


def _check_compatible(U: Subspace, V: Subspace) -> None:
    if U.N != V.N or U.field != V.field:
        raise PreconditionError("subspaces live in different ambient spaces")


def _zassenhaus(U: Subspace, V: Subspace) -> tuple[Subspace, Subspace]:
    N, F = U.N, U.field
    zeros = (0,) * N
    rows = [b + b for b in U.basis] + [b + zeros for b in V.basis]
    red, pivots = rref_rows(rows, 2 * N, F)
    join_rows = [r[:N] for r, p in zip(red, pivots) if p < N]
    meet_rows = [r[N:] for r, p in zip(red, pivots) if p >= N]
    return span(join_rows, N, F), span(meet_rows, N, F)


def meet(U: Subspace, V: Subspace) -> Subspace:
    """U ∩ V."""
    _check_compatible(U, V)
    return _zassenhaus(U, V)[1]


def join(U: Subspace, V: Subspace) -> Subspace:
    """U + V."""
    _check_compatible(U, V)
    return span(U.basis + V.basis, U.N, U.field)


def meet_dim(U: Subspace, V: Subspace) -> int:
    _check_compatible(U, V)
    return U.dim + V.dim - rank(U.basis + V.basis, U.field)


def orthogonal_complement(U: Subspace) -> Subspace:
    """Complement of U under the standard dot product on F_q^N."""
    F, N = U.field, U.N
    piv = set(U.pivots)
    gens = []
    for f in range(N):
        if f in piv:
            continue
        v = [0] * N
        v[f] = 1
        for row, p in zip(U.basis, U.pivots):
            v[p] = F.neg(row[f])
        gens.append(v)
    return span(gens, N, F)


def element_codes(U: Subspace) -> np.ndarray:
    """Sorted codes of all elements of ``U``; needs q <= TABLE_THRESHOLD."""
    F = U.field
    q, N = F.q, U.N
    weights = np.array([q**j for j in range(N)], dtype=np.int64)
    elems = np.zeros((1, N), dtype=np.int64)
    if q == 2:
        codes = np.zeros(1, dtype=np.int64)
        for m in U.masks():
            codes = np.concatenate([codes, codes ^ m])
        return np.sort(codes)
    if F.add_table is None:
        raise PreconditionError("element enumeration needs a tabulated field")
    for b in U.basis:
        bv = np.array(b, dtype=np.int64)
        parts = [elems]
        for c in range(1, q):
            parts.append(F.add_table[elems, F.mul_table[c, bv]])
        elems = np.concatenate(parts)
    return np.sort(elems @ weights)


# --- enumeration ---------------------------------------------------------------


def pivot_sets(N: int, k: int) -> list[tuple[int, ...]]:
    """k-subsets of range(N) in colexicographic order."""
    return sorted(itertools.combinations(range(N), k), key=lambda c: c[::-1])


def _free_columns(pivots: Sequence[int], N: int) -> list[list[int]]:
    ps = set(pivots)
    return [[j for j in range(p + 1, N) if j not in ps] for p in pivots]


def shard_size(pivots: Sequence[int], N: int, q: int) -> int:
    return q ** sum(len(f) for f in _free_columns(pivots, N))


def shard_rows(pivots: Sequence[int], N: int, q: int) -> Iterator[tuple[Vector, ...]]:
    """RREF bases with the given pivots, free entries in odometer order."""
    options = []
    for p, free in zip(pivots, _free_columns(pivots, N)):
        opts = []
        for vals in itertools.product(range(q), repeat=len(free)):
            row = [0] * N
            row[p] = 1
            for j, x in zip(free, vals):
                row[j] = x
            opts.append(tuple(row))
        options.append(opts)
    return itertools.product(*options)


def shard_masks(pivots: Sequence[int], N: int) -> Iterator[tuple[int, ...]]:
    """F_2 version of :func:`shard_rows` yielding bitmask rows (same order)."""
    options = []
    for p, free in zip(pivots, _free_columns(pivots, N)):
        opts = []
        for vals in itertools.product((0, 1), repeat=len(free)):
            m = 1 << p
            for j, x in zip(free, vals):
                if x:
                    m |= 1 << j
            opts.append(m)
        options.append(opts)
    return itertools.product(*options)


def enumerate_subspaces(N: int, k: int, F: FieldSpec) -> Iterator[Subspace]:
    """Every k-subspace of F_q^N exactly once, in a fixed order."""
    if not 0 <= k <= N:
        raise PreconditionError(f"need 0 <= k <= N, got k={k}, N={N}")
    for piv in pivot_sets(N, k):
        for rows in shard_rows(piv, N, F.q):
            yield _from_rref(F, N, rows, piv)


def all_subspaces(N: int, F: FieldSpec) -> Iterator[Subspace]:
    for k in range(N + 1):
        yield from enumerate_subspaces(N, k, F)


# --- matrix spaces -------------------------------------------------------------


def flatten(M: Sequence[Sequence[int]]) -> Vector:
    """Row-major flattening of an n x m matrix."""
    return tuple(x for row in M for x in row)


def unflatten(v: Sequence[int], n: int, m: int) -> tuple[Vector, ...]:
    return tuple(tuple(v[r * m:(r + 1) * m]) for r in range(n))


def flat_rank(v: Sequence[int], n: int, m: int, F: FieldSpec) -> int:
    return rank(unflatten(v, n, m), F)


def mask_rank(mask: int, n: int, m: int) -> int:
    """Rank of the F_2 n x m matrix whose row-major flattening is ``mask``."""
    row = (1 << m) - 1
    return gf2_rank((mask >> (r * m)) & row for r in range(n))


def matrix_space_of_column_space(U: Subspace, m: int) -> Subspace:
    """Matrices in F_q^{n x m} (flattened) whose columns all lie in U."""
    n = U.N
    if m < n or n < 2:
        raise PreconditionError(f"need m >= n >= 2, got n={n}, m={m}")
    gens = []
    for u in U.basis:
        for c in range(m):
            v = [0] * (n * m)
            for r in range(n):
                v[r * m + c] = u[r]
            gens.append(v)
    return span(gens, n * m, U.field)
