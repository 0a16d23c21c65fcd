"""Upper and lower bounds on non-complements, distinguishing spaces and
rank-metric code densities, evaluated exactly."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError
from .gf import Subspace, element_codes
from .qfunc import (
    RealInterval,
    alternating_exp_partial,
    ball_size,
    euler_phi_interval,
    nu,
    pi_q_interval,
    qbinom,
    refine,
    theta,
)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionError(msg)


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


# --- data ----------------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionProfile:
    """Ordered pairs (A, A') of a family counted by dim(A ∩ A').

    ``k`` is the common codimension of the members, so members have
    dimension N - k and ``counts`` is keyed by 0..N-k.
    """

    s: int
    N: int
    k: int
    counts: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "counts", {int(l): int(c) for l, c in self.counts.items() if c})
        self.validate()

    def validate(self) -> None:
        top = self.N - self.k
        _need(self.s >= 1, "profile of an empty family")
        _need(all(0 <= l <= top for l in self.counts), f"intersection dimension outside [0, {top}]")
        _need(sum(self.counts.values()) == self.s**2, "pair counts must sum to s^2")
        diag = self.counts.get(top, 0)
        _need(diag >= self.s, "diagonal pairs missing")
        _need((diag - self.s) % 2 == 0, "off-diagonal pair counts must be even")
        _need(all(c % 2 == 0 for l, c in self.counts.items() if l != top), "off-diagonal pair counts must be even")

    @property
    def l_max(self) -> int | None:
        off = dict(self.counts)
        off[self.N - self.k] -= self.s
        present = [l for l, c in off.items() if c]
        return max(present) if present else None

    def to_dict(self) -> dict:
        return {"s": self.s, "N": self.N, "k": self.k, "counts": {str(l): c for l, c in sorted(self.counts.items())}}

    @classmethod
    def from_dict(cls, d: Mapping) -> "IntersectionProfile":
        return cls(int(d["s"]), int(d["N"]), int(d["k"]), {int(l): int(c) for l, c in d["counts"].items()})


@dataclass(frozen=True)
class BoundReport:
    """Exact lower/upper bounds on a count or a density.

    For counts the integer ceiling/floor are also reported; a supplied oracle
    count turns the verdict into ``within-bounds`` or ``violated``.
    """

    params: Mapping
    lower: Fraction | None
    upper: Fraction | None
    kind: str = "count"
    oracle_count: int | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def lower_int(self) -> int | None:
        if self.lower is None or self.kind != "count":
            return None
        return ceil_fraction(self.lower)

    @property
    def upper_int(self) -> int | None:
        if self.upper is None or self.kind != "count":
            return None
        return floor_fraction(self.upper)

    @property
    def vacuous(self) -> bool:
        return self.lower is not None and self.lower <= 0

    @property
    def verdict(self) -> str:
        if self.oracle_count is None:
            return "unchecked"
        c = self.oracle_count
        lo = self.lower_int if self.kind == "count" else self.lower
        hi = self.upper_int if self.kind == "count" else self.upper
        if (lo is not None and c < lo) or (hi is not None and c > hi):
            return "violated"
        return "within-bounds"

    def check(self, count: int | Fraction) -> "BoundReport":
        return replace(self, oracle_count=count)

    def to_dict(self) -> dict:
        from .render import fraction_str, render_decimal

        def num(x):
            return None if x is None else {"exact": fraction_str(x), "decimal": render_decimal(x)}

        return {
            "params": dict(self.params),
            "kind": self.kind,
            "lower": num(self.lower),
            "upper": num(self.upper),
            "lower_int": self.lower_int,
            "upper_int": self.upper_int,
            "vacuous": self.vacuous,
            "oracle_count": None if self.oracle_count is None else str(self.oracle_count),
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


# --- common complements --------------------------------------------------------


def _cc_domain(N: int, k: int) -> None:
    _need(N >= 3, "N must be >= 3")
    _need(1 <= k <= N - 1, f"need 1 <= k <= N-1, got k={k}")


def cc_bounds(profile: IntersectionProfile, q: int) -> BoundReport:
    """Bounds on the k-spaces meeting some member of the profiled family."""
    profile.validate()
    N, k, s = profile.N, profile.k, profile.s
    _cc_domain(N, k)
    top = nu(N, k, N - k, q)
    denom = sum(nu(N, k, l, q) * c for l, c in profile.counts.items())
    lower = Fraction(top**2 * s**2, denom)
    upper = Fraction(s * top)
    params = {"bound": "cc", "q": q, "N": N, "k": k, "s": s, "profile": profile.to_dict()["counts"]}
    return BoundReport(params, lower, upper)


def cc_bounds_lmax(s: int, l_max: int, N: int, k: int, q: int) -> BoundReport:
    """Profile-free version using only the largest off-diagonal intersection."""
    _cc_domain(N, k)
    _need(s >= 2, "need at least two members")
    top = nu(N, k, N - k, q)
    lower = Fraction(top**2 * s, top + (s - 1) * nu(N, k, l_max, q))
    params = {"bound": "cc-lmax", "q": q, "N": N, "k": k, "s": s, "l_max": l_max}
    return BoundReport(params, lower, Fraction(s * top))


def complement_bounds(report: BoundReport, N: int, k: int, q: int) -> tuple[Fraction, Fraction]:
    """Turn bounds on non-complements into (lower, upper) on common complements."""
    total = qbinom(N, k, q)
    return total - report.upper, total - report.lower


def cone_bounds(cone_size: int, N: int, k: int, q: int) -> BoundReport:
    """Bounds on the k-spaces meeting a cone of the given cardinality."""
    _cc_domain(N, k)
    _need(cone_size >= q, "cone must have at least q elements")
    _need((cone_size - 1) % (q - 1) == 0, f"{cone_size} is not a cone size over F_{q}")
    lines = Fraction(cone_size - 1, q - 1)
    through = qbinom(N - 1, k - 1, q)
    ratio = Fraction(q ** (k - 1) - 1, q ** (N - 1) - 1)
    lower = lines * through / (1 + (lines - 1) * ratio)
    upper = lines * through
    params = {"bound": "cone", "q": q, "N": N, "k": k, "cone_size": cone_size}
    return BoundReport(params, lower, upper)


def tingley_lower(s: int, q: int) -> int:
    """Older lower bound q + 1 - s on common complements, valid for s <= q."""
    _need(1 <= s <= q, f"bound needs 1 <= s <= q, got s={s}, q={q}")
    return q + 1 - s


# --- rank-metric densities -----------------------------------------------------


def _rm_domain(n: int, m: int, d: int) -> None:
    _need(m >= n >= 2, f"need m >= n >= 2, got n={n}, m={m}")
    _need(1 <= d <= n, f"need 1 <= d <= n, got d={d}")


def mrd_density_upper_q(n: int, m: int, d: int, q: int) -> Fraction:
    """Upper bound on the density of n x m MRD codes of minimum distance d."""
    _rm_domain(n, m, d)
    _need(d >= 2, "need d >= 2")
    k, u, N = m * (n - d + 1), d - 1, m * n
    denom = sum(nu(N, k, m * i, q) * theta(n, u, i, q) for i in range(max(0, 2 * u - n), d))
    return 1 - Fraction(qbinom(n, u, q) ** 2 * nu(N, k, m * u, q) ** 2, qbinom(N, k, q) * denom)


def generic_regime(n: int, m: int, k: int, d: int) -> str:
    """Limit of the density as q grows, when the generic bounds decide it."""
    e = (d - 1) * (m + n - d + 1)
    if e <= m * n - k:
        return "dense"
    if e >= m * n - k + 2:
        return "sparse"
    return "undetermined"


def generic_density_bounds(n: int, m: int, k: int, d: int, q: int) -> BoundReport:
    """Lower and upper bounds on delta_q(n x m, k, d) from the rank ball."""
    _rm_domain(n, m, d)
    _need(d >= 2, "need d >= 2")
    N = m * n
    _need(1 <= k <= N, f"need 1 <= k <= mn, got k={k}")
    b = ball_size(n, m, d - 1, q)
    lower = 1 - Fraction((b - 1) * qbinom(N - 1, k - 1, q), (q - 1) * qbinom(N, k, q))
    upper = 1 - (b - 1) * Fraction(q**k - 1, q**N - 1) / ((q - 1) + (b - q) * Fraction(q ** (k - 1) - 1, q ** (N - 1) - 1))
    notes = [f"regime as q grows: {generic_regime(n, m, k, d)}"]
    if lower <= 0:
        notes.append("lower bound is vacuous")
    params = {"bound": "generic", "q": q, "n": n, "m": m, "k": k, "d": d}
    return BoundReport(params, lower, upper, kind="density", notes=tuple(notes))


def _default_eps() -> Fraction:
    return Fraction(1, 10**12)


def mrd_density_upper_m(n: int, d: int, q: int, eps=None) -> RealInterval:
    """Enclosure of 1/(qbinom(n, d-1) (pi(q) - 1) + 1), the large-m bound."""
    _need(n >= 2 and 2 <= d <= n, f"need 2 <= d <= n, got n={n}, d={d}")
    eps = _default_eps() if eps is None else Fraction(eps)
    c = qbinom(n, d - 1, q)
    return refine(lambda t: 1 / (c * (pi_q_interval(q, t) - 1) + 1), eps)


def generic_density_upper_m(n: int, d: int, q: int) -> Fraction:
    """Large-m limit of the generic upper bound: (q-1)/(qbinom(n,d-1)+q-1)."""
    _need(n >= 2 and 2 <= d <= n, f"need 2 <= d <= n, got n={n}, d={d}")
    return Fraction(q - 1, qbinom(n, d - 1, q) + q - 1)


def euler_power_m_bound(n: int, d: int, q: int, eps=None) -> RealInterval:
    """Enclosure of phi(1/q)^{q(d-1)(n-d+1)+1}."""
    _need(n >= 2 and 2 <= d <= n, f"need 2 <= d <= n, got n={n}, d={d}")
    eps = _default_eps() if eps is None else Fraction(eps)
    power = q * (d - 1) * (n - d + 1) + 1
    return refine(lambda t: euler_phi_interval(Fraction(1, q), t) ** power, eps)


def delta_3x3_exact(q: int) -> Fraction:
    """Known exact density of 3 x 3 MRD codes with minimum distance 3."""
    num = (q - 1) * (q**3 - 1) * (q**3 - q) ** 3 * (q**3 - q**2) ** 2 * (q**3 - q**2 - q - 1)
    den = 3 * (q**7 - 1) * (q**9 - 1) * (q**9 - q)
    return Fraction(num, den)


@dataclass(frozen=True)
class LabeledBound:
    label: str
    value: Fraction | RealInterval


def prior_bounds(n: int, m: int | None, d: int, q: int | None, eps=None) -> list[LabeledBound]:
    """Earlier bounds on MRD density in the regime selected by which of m, q
    is None (None meaning that parameter tends to infinity)."""
    _need(n >= 2 and 1 <= d <= n, f"bad (n, d) = ({n}, {d})")
    if m is None and q is None:
        raise PreconditionError("at most one of m, q may tend to infinity")
    e = (d - 1) * (n - d + 1)
    if q is None:
        _need(m >= n, "need m >= n")
        _need(d >= 2, "need d >= 2")
        return [
            LabeledBound("half (q->inf)", Fraction(1, 2)),
            LabeledBound("alternating-exp-power (q->inf)", alternating_exp_partial(m) ** e),
        ]
    if m is None:
        _need(d >= 2, "need d >= 2")
        return [
            LabeledBound("half-refined (m->inf)", Fraction((q - 1) * (q - 2) + 1, 2 * (q - 1) ** 2)),
            LabeledBound("euler-power (m->inf)", euler_power_m_bound(n, d, q, eps)),
        ]
    if (n, m, d) == (3, 3, 3):
        return [LabeledBound("exact 3x3 density", delta_3x3_exact(q))]
    raise PreconditionError("finite (m, q) prior results exist only for n = m = d = 3")


# --- asymptotic classification -------------------------------------------------

GROWTH_SMALL = "o(q)"
GROWTH_LINEAR = "~gamma*q"
GROWTH_LARGE = "q=o(A)"


@dataclass(frozen=True)
class AsymptoticVerdict:
    label: str
    limsup: Fraction | None
    rate: str
    explanation: str


def classify_cc_asymptotics(
    N: int,
    k: int,
    growth: str,
    spread: bool = False,
    l_bound: int | None = None,
    gamma: Fraction | int | None = None,
) -> AsymptoticVerdict:
    """Sparse/dense behaviour of common complements as q grows.

    ``growth`` is how the family size compares with q: ``"o(q)"``,
    ``"~gamma*q"`` (needs ``gamma``) or ``"q=o(A)"``.
    """
    _cc_domain(N, k)
    low = max(0, N - 2 * k)
    if growth == GROWTH_SMALL:
        return AsymptoticVerdict(
            "complements-dense", Fraction(0), "O(|A|/q)", "non-complements are O(|A|/q) of all k-spaces"
        )
    if growth == GROWTH_LINEAR:
        _need(gamma is not None and gamma > 0, "linear growth needs gamma > 0")
        if not spread:
            return AsymptoticVerdict(
                "undetermined", None, "", "linear growth without the partial-spread property is not covered"
            )
        bound = 1 / (Fraction(gamma) + 1)
        return AsymptoticVerdict(
            "limsup-bound",
            bound,
            "",
            f"limsup of the complement density is at most {bound}; they may or may not be sparse",
        )
    if growth != GROWTH_LARGE:
        raise PreconditionError(f"unknown growth regime {growth!r}")
    if spread:
        return AsymptoticVerdict("complements-sparse", Fraction(0), "O(q/|A|)", "asymptotic partial spread")
    if l_bound is None:
        return AsymptoticVerdict("undetermined", None, "", "needs a partial spread or a bound on intersections")
    if not (low <= l_bound < N - k - 1 or l_bound == low == N - k - 1):
        return AsymptoticVerdict(
            "undetermined",
            None,
            "",
            f"intersection bound {l_bound} violates the hypotheses (need {low} <= l < {N - k - 1}, "
            f"or l = {low} = N-k-1)",
        )
    if l_bound == low:
        rate = "O(q/|A|)"
    else:
        rate = f"O(q/|A| + q^{-N + k + l_bound + 1})"
    return AsymptoticVerdict("complements-sparse", Fraction(0), rate, "bounded pairwise intersections")


def spread_ratio(family: Sequence[Subspace]) -> Fraction:
    """|union of members| / (s q^dim); 1 means the members meet only in 0."""
    _need(len(family) > 0, "empty family")
    dims = {A.dim for A in family}
    _need(len(dims) == 1, "members must have equal dimension")
    codes = set()
    for A in family:
        codes.update(element_codes(A).tolist())
    (dim,) = dims
    return Fraction(len(codes), len(family) * family[0].q ** dim)


# --- structural relations between densities -----------------------------------


def decomposition_rhs(n: int, m: int, d: int, q: int, delta_first: Fraction, delta_rest: Fraction) -> Fraction:
    """Right side of the row-splitting inequality, given the densities of
    d x m codes (dim m) and (n-1) x m codes (dim m(n-d)), both distance d."""
    _rm_domain(n, m, d)
    _need(n >= 3 and 2 <= d < n, f"need n >= 3 and 2 <= d < n, got n={n}, d={d}")
    A = qbinom(m * n, m * (n - d + 1), q)
    B = qbinom(m * d, m, q) * qbinom(m * (n - 1), m * (n - d), q)
    return Fraction(delta_first) * Fraction(delta_rest) * Fraction(B, A)


def duality_densities(n: int, m: int, d: int, q: int, count: int, dual_count: int) -> tuple[Fraction, Fraction]:
    """Densities of distance-d MRD codes and of distance-(n-d+2) MRD codes."""
    _rm_domain(n, m, d)
    _need(d >= 2, "need d >= 2")
    return (
        Fraction(count, qbinom(m * n, m * (n - d + 1), q)),
        Fraction(dual_count, qbinom(m * n, m * (d - 1), q)),
    )


def corollary_bound(n: int, m: int, d: int, q: int, delta_2xm: Fraction) -> Fraction:
    """Upper bound on MRD density from the 2 x m, distance-2 density."""
    _rm_domain(n, m, d)
    _need(d >= 2, "need d >= 2")
    e = (n - d + 1) * (d - 1)
    return Fraction(delta_2xm) ** e * Fraction(qbinom(2 * m, m, q) ** e, qbinom(m * n, m * (n - d + 1), q))


def profile_from_counts(s: int, N: int, k: int, counts: Iterable[tuple[int, int]]) -> IntersectionProfile:
    return IntersectionProfile(s, N, k, dict(counts))




SECTION7_RELATIONS = ("decomposition", "duality", "corollary")


def section7_bounds(relation: str, n: int, m: int, d: int, q: int, **values) -> BoundReport:
    """Evaluate one of the structural density relations as a report.

    decomposition: needs ``delta_first`` (d x m, dim m) and ``delta_rest``
    ((n-1) x m, dim m(n-d)); returns an upper bound on the MRD density.
    duality: needs ``count`` and ``dual_count``; lower = upper = density, and
    a note records whether the two densities agree.
    corollary: needs ``delta_2xm``; returns an upper bound.
    """
    params = {"bound": "section7", "relation": relation, "n": n, "m": m, "d": d, "q": q}
    if relation == "decomposition":
        up = decomposition_rhs(n, m, d, q, values["delta_first"], values["delta_rest"])
        return BoundReport(params, None, up, kind="density")
    if relation == "corollary":
        return BoundReport(params, None, corollary_bound(n, m, d, q, values["delta_2xm"]), kind="density")
    if relation == "duality":
        a, b = duality_densities(n, m, d, q, values["count"], values["dual_count"])
        note = "densities agree" if a == b else f"densities differ: {a} vs {b}"
        # the dual density plays the oracle value: within-bounds iff equal
        return BoundReport(params, a, a, kind="density", notes=(note,)).check(b)
    raise PreconditionError(f"unknown relation {relation!r}; choose from {SECTION7_RELATIONS}")
