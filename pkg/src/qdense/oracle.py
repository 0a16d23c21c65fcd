"""Brute-force censuses over finite fields.

Everything here recounts from first principles: subspaces are enumerated
exhaustively, codewords are ranked one by one, functional tuples are
tallied in full.  The formulas in :mod:`qdense.qfunc` and the bounds in
:mod:`qdense.bounds` are checked against these counts, never the reverse.
"""

from __future__ import annotations

import itertools
import json
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .bounds import IntersectionProfile
from .errors import BudgetExceeded, PreconditionError
from .gf import (
    FieldSpec,
    Subspace,
    Vector,
    code_vector,
    element_codes,
    enumerate_subspaces,
    field_make,
    flat_rank,
    mask_rank,
    matrix_space_of_column_space,
    meet_dim,
    orthogonal_complement,
    pivot_sets,
    shard_masks,
    shard_rows,
    span,
    unflatten,
    vector_code,
    vector_of_mask,
)
from .qfunc import qbinom

DEFAULT_SUBSPACE_BUDGET = 2_000_000
DEFAULT_TUPLE_BUDGET = 2**24
TABLE_LIMIT = 2**20  # largest ambient q^N for which per-vector tables are built
RANK_TABLE_LIMIT = 2**16
_CHUNK_CELLS = 2**22


def subspace_budget(budget: int | None = None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get("QDENSE_BUDGET")
    return int(env) if env else DEFAULT_SUBSPACE_BUDGET


def _check_budget(total: int, budget: int | None, what: str) -> None:
    limit = subspace_budget(budget)
    if total > limit:
        raise BudgetExceeded(f"{what} needs {total} subspaces, budget is {limit} (raise with --budget or QDENSE_BUDGET)")


# --- data ----------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixCode:
    """A linear rank-metric code: a subspace of F_q^{n x m}, flattened row-major."""

    space: Subspace
    n: int
    m: int

    def __post_init__(self):
        if self.space.N != self.n * self.m:
            raise PreconditionError(f"ambient {self.space.N} is not {self.n}x{self.m}")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def field(self) -> FieldSpec:
        return self.space.field

    @cached_property
    def min_distance(self) -> int:
        return min_distance(self)

    def matrices(self) -> list[tuple[Vector, ...]]:
        return [unflatten(b, self.n, self.m) for b in self.space.basis]

    @classmethod
    def from_matrices(cls, mats: Iterable[Sequence[Sequence[int]]], n: int, m: int, F: FieldSpec) -> "MatrixCode":
        gens = [tuple(x for row in M for x in row) for M in mats]
        return cls(span(gens, n * m, F), n, m)


@dataclass(frozen=True)
class FamilySpec:
    """Equal-dimension distinct subspaces of F_q^N."""

    field: FieldSpec
    N: int
    members: tuple[Subspace, ...]
    tag: str | None = None

    def __post_init__(self):
        if not self.members:
            raise PreconditionError("family has no members")
        dims = {A.dim for A in self.members}
        if len(dims) != 1:
            raise PreconditionError(f"members have different dimensions {sorted(dims)}")
        if any(A.N != self.N or A.field != self.field for A in self.members):
            raise PreconditionError("member outside the ambient space")
        if len(set(self.members)) != len(self.members):
            raise PreconditionError("members are not distinct")

    @property
    def s(self) -> int:
        return len(self.members)

    @property
    def member_dim(self) -> int:
        return self.members[0].dim

    @classmethod
    def from_dict(cls, d: Mapping) -> "FamilySpec":
        q, p, e, N = (int(d[key]) for key in ("q", "p", "e", "N"))
        if p**e != q:
            raise PreconditionError(f"q={q} is not {p}^{e}")
        F = field_make(p, e)
        members = tuple(span(rows, N, F) for rows in d["members"])
        return cls(F, N, members, d.get("tag"))

    @classmethod
    def from_json(cls, text: str) -> "FamilySpec":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        out = {
            "q": self.field.q,
            "p": self.field.p,
            "e": self.field.e,
            "N": self.N,
            "members": [[list(r) for r in A.basis] for A in self.members],
        }
        if self.tag:
            out["tag"] = self.tag
        return out


@dataclass(frozen=True)
class CensusResult:
    params: Mapping
    counts: Mapping
    elapsed: float
    shards: int
    extra: Mapping = field(default_factory=dict)

    def to_dict(self) -> dict:
        def enc(v):
            if isinstance(v, Fraction):
                return f"{v.numerator}/{v.denominator}"
            if isinstance(v, dict):
                return {str(a): enc(b) for a, b in v.items()}
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            return v

        return {
            "params": enc(dict(self.params)),
            "counts": enc(dict(self.counts)),
            "elapsed": round(self.elapsed, 6),
            "shards": self.shards,
            **({"extra": enc(dict(self.extra))} if self.extra else {}),
        }


# --- tables --------------------------------------------------------------------


@lru_cache(maxsize=None)
def rank_table(n: int, m: int, p: int, e: int = 1) -> np.ndarray:
    """rank of every n x m matrix, indexed by the code of its flattening."""
    F = field_make(p, e)
    q = F.q
    size = q ** (n * m)
    if size > RANK_TABLE_LIMIT:
        raise PreconditionError(f"rank table of size {size} is too large")
    if q == 2:
        out = np.fromiter((mask_rank(x, n, m) for x in range(size)), dtype=np.int8, count=size)
    else:
        out = np.fromiter(
            (flat_rank(code_vector(c, n * m, q), n, m, F) for c in range(size)), dtype=np.int8, count=size
        )
    out.setflags(write=False)
    return out


def _all_vectors(N: int, q: int) -> np.ndarray:
    """Every vector of F_q^N as a row, row index equal to its code."""
    codes = np.arange(q**N, dtype=np.int64)
    return np.stack([(codes // q**j) % q for j in range(N)], axis=1)


def rank_at_most_table(n: int, m: int, r: int, F: FieldSpec) -> np.ndarray:
    """Boolean table over all codes: rank(M) <= r."""
    size = F.q ** (n * m)
    if size <= RANK_TABLE_LIMIT:
        return rank_table(n, m, F.p, F.e) <= r
    if size > TABLE_LIMIT:
        raise BudgetExceeded(f"ambient of size {size} is too large to tabulate")
    if F.q == 2:
        return np.fromiter((mask_rank(x, n, m) <= r for x in range(size)), dtype=bool, count=size)
    return np.fromiter(
        (flat_rank(code_vector(c, n * m, F.q), n, m, F) <= r for c in range(size)), dtype=bool, count=size
    )


def union_table(members: Iterable[Subspace], N: int, q: int) -> np.ndarray:
    """Boolean table over all codes: the vector lies in some member."""
    if q**N > TABLE_LIMIT:
        raise BudgetExceeded(f"ambient of size {q**N} is too large to tabulate")
    table = np.zeros(q**N, dtype=bool)
    for A in members:
        table[element_codes(A)] = True
    return table


# --- the shard engine ----------------------------------------------------------


def _coefficient_rows(k: int, q: int) -> np.ndarray:
    """Normalized coefficient vectors, one per 1-dimensional subspace of F_q^k."""
    rows = []
    for lead in range(k):
        for rest in itertools.product(range(q), repeat=k - lead - 1):
            rows.append((0,) * lead + (1,) + rest)
    return np.array(rows, dtype=np.int64).reshape(-1, k)


def _chunks(it, size: int):
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def _avoid_shard_f2(pivots, N, k, bad, collect):
    total = 0
    kept = []
    width = 1 << k
    chunk = max(1, _CHUNK_CELLS // width)
    for block in _chunks(shard_masks(pivots, N), chunk):
        R = np.array(block, dtype=np.int64).reshape(-1, k)
        comb = np.zeros((R.shape[0], width), dtype=np.int64)
        for c in range(1, width):
            low = c & -c
            comb[:, c] = comb[:, c ^ low] ^ R[:, low.bit_length() - 1]
        ok = ~bad[comb[:, 1:]].any(axis=1)
        total += int(ok.sum())
        if collect:
            kept.extend(tuple(vector_of_mask(int(x), N) for x in R[i]) for i in np.flatnonzero(ok))
    return total, kept


def _avoid_shard_general(pivots, N, k, F, bad, collect):
    q = F.q
    total = 0
    kept = []
    P = _coefficient_rows(k, q)
    weights = np.array([q**j for j in range(N)], dtype=np.int64)
    chunk = max(1, _CHUNK_CELLS // max(1, len(P) * N))
    for block in _chunks(shard_rows(pivots, N, q), chunk):
        B = np.array(block, dtype=np.int64).reshape(-1, k, N)
        if k == 0:
            ok = np.ones(B.shape[0], dtype=bool)
        elif F.is_prime_field:
            codes = (np.einsum("pk,skn->spn", P, B) % q) @ weights
            ok = ~bad[codes].any(axis=1)
        else:
            ok = np.ones(B.shape[0], dtype=bool)
            for coeffs in P:
                acc = np.zeros((B.shape[0], N), dtype=np.int64)
                for i, c in enumerate(coeffs):
                    if c:
                        acc = F.add_table[acc, F.mul_table[c, B[:, i, :]]]
                ok &= ~bad[acc @ weights]
        total += int(ok.sum())
        if collect:
            kept.extend(tuple(tuple(int(x) for x in row) for row in B[i]) for i in np.flatnonzero(ok))
    return total, kept


def _avoid_task(args):
    pivots, N, k, p, e, bad, collect = args
    F = field_make(p, e)
    if F.q == 2:
        return _avoid_shard_f2(pivots, N, k, bad, collect)
    return _avoid_shard_general(pivots, N, k, F, bad, collect)


def run_shards(task: Callable, jobs: Sequence, threads: int = 1) -> list:
    """Apply ``task`` to each job, results in job order whatever ``threads`` is."""
    if threads < 1:
        raise PreconditionError("threads must be >= 1")
    if threads == 1 or len(jobs) <= 1:
        return [task(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(task, jobs))


def count_avoiding(
    N: int,
    k: int,
    F: FieldSpec,
    bad: np.ndarray,
    threads: int = 1,
    budget: int | None = None,
    collect: bool = False,
) -> tuple[int, list, int]:
    """Count k-subspaces of F_q^N containing no nonzero vector flagged in ``bad``.

    ``bad`` is a boolean table indexed by vector code.  Returns the count,
    the kept bases (when ``collect``) and the number of shards.
    """
    if not 0 <= k <= N:
        raise PreconditionError(f"need 0 <= k <= N, got k={k}, N={N}")
    _check_budget(qbinom(N, k, F.q), budget, f"census of {k}-subspaces of F_{F.q}^{N}")
    if len(bad) != F.q**N:
        raise PreconditionError("membership table has the wrong size")
    bad = np.asarray(bad, dtype=bool)
    jobs = [(piv, N, k, F.p, F.e, bad, collect) for piv in pivot_sets(N, k)]
    results = run_shards(_avoid_task, jobs, threads)
    total = sum(r[0] for r in results)
    kept = [b for r in results for b in r[1]]
    return total, kept, len(jobs)


# --- minimum distance ----------------------------------------------------------


def min_distance(code: MatrixCode) -> int:
    """Least rank of a nonzero codeword."""
    U, n, m = code.space, code.n, code.m
    if U.dim == 0:
        raise PreconditionError("the zero code has no minimum distance")
    F = U.field
    if F.q == 2:
        masks = U.masks()
        best = n
        x = 0
        # Gray code: one XOR per codeword
        for i in range(1, 1 << U.dim):
            x ^= masks[(i & -i).bit_length() - 1]
            r = mask_rank(x, n, m)
            if r < best:
                best = r
                if best == 1:
                    break
        return best
    return min(flat_rank(v, n, m, F) for v in U.projective_points())


# --- complements and cones -----------------------------------------------------


def count_common_complements(
    family: FamilySpec, k: int, threads: int = 1, budget: int | None = None
) -> tuple[int, int]:
    """(common complements, k-spaces meeting some member), by exhaustion."""
    N, F = family.N, family.field
    if k + family.member_dim != N:
        raise PreconditionError(f"k={k} plus member dimension {family.member_dim} is not N={N}")
    bad = union_table(family.members, N, F.q)
    good, _, _ = count_avoiding(N, k, F, bad, threads, budget)
    return good, qbinom(N, k, F.q) - good


def intersection_profile(family: FamilySpec) -> IntersectionProfile:
    """Histogram of dim(A ∩ A') over all ordered pairs of members."""
    counts: Counter = Counter()
    mem = family.members
    for i, A in enumerate(mem):
        counts[A.dim] += 1
        for B in mem[i + 1:]:
            counts[meet_dim(A, B)] += 2
    return IntersectionProfile(family.s, family.N, family.N - family.member_dim, dict(counts))


@dataclass(frozen=True)
class Cone:
    """A cone given by a membership predicate on vectors and its cardinality."""

    contains: Callable[[Vector], bool]
    size: int
    label: str = ""


def cone_table(cone: Cone, N: int, F: FieldSpec, samples: int = 64, seed: int = 0) -> np.ndarray:
    """Tabulate a cone over F_q^N after checking it behaves like one."""
    q = F.q
    if q**N > TABLE_LIMIT:
        raise BudgetExceeded(f"ambient of size {q**N} is too large to tabulate")
    if not cone.contains((0,) * N):
        raise PreconditionError("cone must contain 0")
    table = np.fromiter((bool(cone.contains(code_vector(c, N, q))) for c in range(q**N)), dtype=bool, count=q**N)
    members = np.flatnonzero(table)
    rng = np.random.default_rng(seed)
    for c in rng.choice(members, size=min(samples, len(members)), replace=False):
        v = code_vector(int(c), N, q)
        for a in range(2, q):
            if not table[vector_code([F.mul(a, x) for x in v], q)]:
                raise PreconditionError("predicate is not closed under scalar multiplication")
    if len(members) != cone.size:
        raise PreconditionError(f"cone has {len(members)} elements, declared {cone.size}")
    return table


def count_distinguishing_cone(
    cone: Cone, N: int, k: int, F: FieldSpec, threads: int = 1, budget: int | None = None
) -> int:
    """Number of k-subspaces meeting the cone only in 0."""
    good, _, _ = count_avoiding(N, k, F, cone_table(cone, N, F), threads, budget)
    return good


def rank_ball_cone(n: int, m: int, r: int, F: FieldSpec) -> Cone:
    """Matrices of rank at most r, membership decided by computing the rank."""
    from .qfunc import ball_size

    return Cone(lambda v: flat_rank(v, n, m, F) <= r, ball_size(n, m, r, F.q), f"rank<={r} in {n}x{m}")


def union_cone(members: Sequence[Subspace]) -> Cone:
    """Union of subspaces, with its exact size counted from element sets."""
    codes = set()
    for A in members:
        codes.update(element_codes(A).tolist())
    q = members[0].q
    return Cone(lambda v: vector_code(v, q) in codes, len(codes), "union of subspaces")


# --- rank-metric codes ---------------------------------------------------------


def _code_domain(n: int, m: int, d: int) -> None:
    if not m >= n >= 2:
        raise PreconditionError(f"need m >= n >= 2, got n={n}, m={m}")
    if not 1 <= d <= n:
        raise PreconditionError(f"need 1 <= d <= n, got d={d}")


def code_census(
    n: int, m: int, k: int, d: int, F: FieldSpec, threads: int = 1, budget: int | None = None, collect=False
) -> tuple[int, list[MatrixCode], int]:
    """k-dimensional codes in F_q^{n x m} with minimum distance >= d (rank filter)."""
    _code_domain(n, m, d)
    bad = rank_at_most_table(n, m, d - 1, F)
    count, kept, shards = count_avoiding(n * m, k, F, bad, threads, budget, collect)
    codes = [MatrixCode(span(rows, n * m, F), n, m) for rows in kept]
    return count, codes, shards


def mrd_family(n: int, m: int, d: int, F: FieldSpec) -> FamilySpec:
    """{F_q^{n x m}(U) : dim U = d-1}: MRD codes are their common complements."""
    _code_domain(n, m, d)
    members = tuple(matrix_space_of_column_space(U, m) for U in enumerate_subspaces(n, d - 1, F))
    return FamilySpec(F, n * m, members, f"mrd-family({n},{m},{d})")


def mrd_census(
    n: int, m: int, d: int, q: int, threads: int = 1, budget: int | None = None, collect: bool = False
) -> CensusResult:
    """Count MRD codes twice: by ranking codewords, and as common complements."""
    F = _field_of(q)
    k = m * (n - d + 1)
    t0 = time.perf_counter()
    by_rank, codes, shards = code_census(n, m, k, d, F, threads, budget, collect)
    fam = mrd_family(n, m, d, F)
    by_complement, _ = count_common_complements(fam, k, threads, budget)
    if by_rank != by_complement:
        raise AssertionError(f"rank filter gave {by_rank}, complement census gave {by_complement}")
    total = qbinom(n * m, k, q)
    return CensusResult(
        {"n": n, "m": m, "d": d, "q": q, "k": k},
        {"count": by_rank, "complement_path": by_complement, "total": total, "density": Fraction(by_rank, total)},
        time.perf_counter() - t0,
        shards,
        {"codes": codes} if collect else {},
    )


def dual_code(code: MatrixCode) -> MatrixCode:
    """Dual under <A, B> = Tr(A B^T), i.e. the dot product of flattenings."""
    return MatrixCode(orthogonal_complement(code.space), code.n, code.m)


def dual_census(n: int, m: int, d: int, q: int, threads: int = 1, budget: int | None = None) -> CensusResult:
    """MRD codes of distance d against codes of dim m(d-1) and distance >= n-d+2."""
    if d < 2:
        raise PreconditionError("need d >= 2")
    F = _field_of(q)
    t0 = time.perf_counter()
    count, codes, shards = code_census(n, m, m * (n - d + 1), d, F, threads, budget, collect=True)
    dual_d = n - d + 2
    dual_count, dual_codes, _ = code_census(n, m, m * (d - 1), dual_d, F, threads, budget, collect=True)
    duals = [dual_code(c) for c in codes]
    images_ok = all(c.dim == m * (d - 1) and c.min_distance >= dual_d for c in duals)
    bijective = set(c.space for c in duals) == set(c.space for c in dual_codes)
    involution = all(dual_code(D).space == c.space for D, c in zip(duals, codes))
    return CensusResult(
        {"n": n, "m": m, "d": d, "q": q},
        {
            "count": count,
            "dual_count": dual_count,
            "density": Fraction(count, qbinom(n * m, m * (n - d + 1), q)),
            "dual_density": Fraction(dual_count, qbinom(n * m, m * (d - 1), q)),
        },
        time.perf_counter() - t0,
        shards,
        {"duals_have_dual_parameters": images_ok, "dual_map_is_bijective": bijective, "double_dual_is_identity": involution},
    )


def _is_mrd(code: MatrixCode) -> int:
    d = code.min_distance
    if d < 2 or code.dim != code.m * (code.n - d + 1):
        raise PreconditionError("code is not MRD with minimum distance >= 2")
    return d


def special_basis(code: MatrixCode) -> tuple[Vector, ...]:
    """The unique basis whose top n-d+1 rows run through the unit matrices E_ij.

    Computed by row reduction and again by searching the codewords; the two
    must agree.
    """
    d = _is_mrd(code)
    top = (code.n - d + 1) * code.m
    U = code.space
    if U.pivots != tuple(range(top)):
        raise AssertionError("projection onto the top rows is not injective")
    by_rref = U.basis
    by_search: list[Vector | None] = [None] * top
    for v in U.vectors():
        head = v[:top]
        nz = [i for i, x in enumerate(head) if x]
        if len(nz) == 1 and head[nz[0]] == 1:
            if by_search[nz[0]] is not None:
                raise AssertionError("special basis is not unique")
            by_search[nz[0]] = v
    if tuple(by_search) != by_rref:
        raise AssertionError("the two constructions of the special basis disagree")
    return by_rref


def split(code: MatrixCode) -> tuple[MatrixCode, MatrixCode]:
    """(C1, C2): the first-row slice as a d x m code, the rest as (n-1) x m."""
    n, m = code.n, code.m
    d = _is_mrd(code)
    if not (n >= 3 and 2 <= d < n):
        raise PreconditionError(f"split needs n >= 3 and 2 <= d < n, got n={n}, d={d}")
    basis = special_basis(code)
    F = code.field
    first, rest = basis[:m], basis[m:]
    dropped = range(1, n - d + 1)
    c1_rows = []
    for b in first:
        M = unflatten(b, n, m)
        assert all(not any(M[r]) for r in dropped)
        c1_rows.append(tuple(x for r in range(n) if r not in dropped for x in M[r]))
    c2_rows = []
    for b in rest:
        M = unflatten(b, n, m)
        assert not any(M[0])
        c2_rows.append(tuple(x for row in M[1:] for x in row))
    return (
        MatrixCode(span(c1_rows, d * m, F), d, m),
        MatrixCode(span(c2_rows, (n - 1) * m, F), n - 1, m),
    )


def split_census(n: int, m: int, d: int, q: int, threads: int = 1, budget: int | None = None) -> CensusResult:
    """Split every MRD code and check both parts are MRD and the map is injective."""
    t0 = time.perf_counter()
    res = mrd_census(n, m, d, q, threads, budget, collect=True)
    codes = res.extra["codes"]
    pairs = [split(c) for c in codes]
    c1_ok = all(c1.dim == m and c1.min_distance == d for c1, _ in pairs)
    c2_ok = all(c2.dim == m * (n - d) and c2.min_distance == d for _, c2 in pairs)
    injective = len({(a.space, b.space) for a, b in pairs}) == len(pairs)
    ranks_ok = all(flat_rank(b, n, m, c.field) == d for c in codes for b in special_basis(c))
    return CensusResult(
        {"n": n, "m": m, "d": d, "q": q},
        {
            "count": res.counts["count"],
            "distinct_first": len({a.space for a, _ in pairs}),
            "distinct_rest": len({b.space for _, b in pairs}),
        },
        time.perf_counter() - t0,
        res.shards,
        {"first_parts_mrd": c1_ok, "rest_parts_mrd": c2_ok, "injective": injective, "basis_ranks_equal_d": ranks_ok},
    )


# --- functionals ---------------------------------------------------------------


def count_distinguishing_functionals(
    S: Iterable[Sequence[int]], r: int, N: int, F: FieldSpec, budget: int = DEFAULT_TUPLE_BUDGET
) -> int:
    """Number of r-tuples of functionals on F_q^N whose common kernel meets S only in 0.

    Tuples are tallied through the pattern of S-vectors each functional kills;
    functionals with equal patterns are interchangeable, so the count over
    all q^{rN} tuples is exact.
    """
    q = F.q
    if r < 1:
        raise PreconditionError("need r >= 1")
    if q ** (r * N) > budget:
        raise BudgetExceeded(f"{q ** (r * N)} functional tuples exceed budget {budget}")
    pts = [tuple(v) for v in S if any(v)]
    if any(len(v) != N for v in pts):
        raise PreconditionError("point of the wrong length")
    funcs = _all_vectors(N, q)
    if pts:
        V = np.array(pts, dtype=np.int64)
        if F.is_prime_field:
            kills = (funcs @ V.T) % q == 0
        else:
            kills = np.ones((len(funcs), len(pts)), dtype=bool)
            for j, v in enumerate(pts):
                acc = np.zeros(len(funcs), dtype=np.int64)
                for i, x in enumerate(v):
                    if x:
                        acc = F.add_table[acc, F.mul_table[x, funcs[:, i]]]
                kills[:, j] = acc == 0
        patterns = Counter(int.from_bytes(np.packbits(row).tobytes(), "big") for row in kills)
    else:
        patterns = Counter({0: len(funcs)})
    full = (1 << (8 * ((len(pts) + 7) // 8))) - 1 if pts else 0
    dist = {full: 1}
    for _ in range(r):
        nxt: Counter = Counter()
        for a, ca in dist.items():
            for pat, cp in patterns.items():
                nxt[a & pat] += ca * cp
        dist = nxt
    return dist.get(0, 0)


def functional_division_check(S_members: Sequence[Subspace], k: int, threads: int = 1) -> dict:
    """Compare distinguishing k-spaces of a union of subspaces with the
    functional count divided by the size of GL(N-k)."""
    from .qfunc import gl_order

    A = S_members[0]
    N, F = A.N, A.field
    pts = {v for M in S_members for v in M.projective_points()}
    tau = count_distinguishing_functionals(pts, N - k, N, F)
    spaces, _, _ = count_avoiding(N, k, F, union_table(S_members, N, F.q), threads)
    g = gl_order(N - k, F.q)
    return {"tau": tau, "gl": g, "spaces": spaces, "ok": tau == spaces * g}


def tau_census(r: int, U: Subspace) -> int:
    return count_distinguishing_functionals(U.projective_points(), r, U.N, U.field)


def tau_union_census(r: int, A: Subspace, B: Subspace) -> int:
    pts = set(A.projective_points()) | set(B.projective_points())
    return count_distinguishing_functionals(pts, r, A.N, A.field)


# --- pair censuses -------------------------------------------------------------


def _membership(spaces: Sequence[Subspace], N: int, q: int) -> np.ndarray:
    M = np.zeros((len(spaces), q**N), dtype=np.int32)
    for i, U in enumerate(spaces):
        M[i, element_codes(U)] = 1
    return M


def _dims_from_overlap(overlap: np.ndarray, q: int) -> np.ndarray:
    dims = np.zeros(overlap.shape, dtype=np.int64)
    size = overlap.copy()
    while (size > 1).any():
        dims += size > 1
        size = np.where(size > 1, size // q, size)
    return dims


def nu_census(N: int, k: int, q: int, budget: int | None = None) -> dict[int, set[int]]:
    """For every ordered pair (A, B) of (N-k)-spaces, count the k-spaces meeting both.

    Returns dim(A ∩ B) -> set of counts seen; the counts should depend only on
    the intersection dimension.
    """
    F = _field_of(q)
    nA, nW = qbinom(N, N - k, q), qbinom(N, k, q)
    _check_budget(nA + nW, budget, "pair census")
    As = list(enumerate_subspaces(N, N - k, F))
    Ws = list(enumerate_subspaces(N, k, F))
    MA, MW = _membership(As, N, q), _membership(Ws, N, q)
    MA_nz, MW_nz = MA.copy(), MW.copy()
    MA_nz[:, 0] = 0
    MW_nz[:, 0] = 0
    inc = (MA_nz @ MW_nz.T > 0).astype(np.int64)
    both = inc @ inc.T
    dims = _dims_from_overlap(MA @ MA.T, q)
    out: dict[int, set[int]] = {}
    for l in np.unique(dims):
        out[int(l)] = {int(x) for x in np.unique(both[dims == l])}
    return out


def theta_census(n: int, u: int, q: int) -> dict[int, int]:
    """Ordered pairs of u-subspaces of F_q^n by intersection dimension."""
    F = _field_of(q)
    Us = list(enumerate_subspaces(n, u, F))
    M = _membership(Us, n, q)
    dims = _dims_from_overlap(M @ M.T, q)
    vals, cnt = np.unique(dims, return_counts=True)
    return {int(a): int(b) for a, b in zip(vals, cnt)}


def _field_of(q: int) -> FieldSpec:
    from .gf import GF

    return GF(q)
