"""Constructors for subspace families and cones used in censuses."""

from __future__ import annotations

import random

from .errors import PreconditionError
from .gf import FieldSpec, Subspace, code_vector, enumerate_subspaces, field_make, span
from .oracle import FamilySpec


def _pad(v, N):
    return tuple(v) + (0,) * (N - len(v))


def line_spread(F: FieldSpec, N: int) -> FamilySpec:
    """The q^2+1 lines {(u, a u)} and {(0, v)} of F_{q^2}^2, a 2-spread of the
    first four coordinates of F_q^N.  Needs a prime field."""
    if not F.is_prime_field:
        raise PreconditionError("spread construction needs a prime field")
    if N < 4:
        raise PreconditionError("need N >= 4")
    p = F.p
    E = field_make(p, 2)

    def coords(x):
        return (x % p, x // p)

    members = []
    for a in range(E.q):
        gens = [_pad(coords(u) + coords(E.mul(a, u)), N) for u in (1, p)]
        members.append(span(gens, N, F))
    members.append(span([_pad((0, 0, 1, 0), N), _pad((0, 0, 0, 1), N)], N, F))
    return FamilySpec(F, N, tuple(members), "line-spread")


def subspaces_of_coordinate_space(F: FieldSpec, N: int, host_dim: int, member_dim: int) -> FamilySpec:
    """All member_dim-subspaces of the span of the first host_dim coordinates."""
    if not 0 < member_dim <= host_dim <= N:
        raise PreconditionError("need 0 < member_dim <= host_dim <= N")
    members = tuple(span([_pad(r, N) for r in U.basis], N, F) for U in enumerate_subspaces(host_dim, member_dim, F))
    return FamilySpec(F, N, members, f"all {member_dim}-subspaces of a {host_dim}-space")


def random_subspace(rng: random.Random, N: int, k: int, F: FieldSpec) -> Subspace:
    while True:
        U = span([[rng.randrange(F.q) for _ in range(N)] for _ in range(k)], N, F)
        if U.dim == k:
            return U


def random_family(rng: random.Random, N: int, dim: int, s: int, F: FieldSpec) -> FamilySpec:
    members: dict[Subspace, None] = {}
    while len(members) < s:
        members[random_subspace(rng, N, dim, F)] = None
    return FamilySpec(F, N, tuple(members), "random")


def random_cone_codes(rng: random.Random, N: int, F: FieldSpec, points: int) -> frozenset[int]:
    """Codes of a cone: 0 plus all nonzero multiples of ``points`` random vectors."""
    q = F.q
    codes = {0}
    while len(codes) < 1 + points * (q - 1):
        v = code_vector(rng.randrange(1, q**N), N, q)
        for a in range(1, q):
            codes.add(sum(F.mul(a, x) * q**j for j, x in enumerate(v)))
    return frozenset(codes)
