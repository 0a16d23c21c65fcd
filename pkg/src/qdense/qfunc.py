"""Exact closed formulas and certified q-series enclosures.

Everything here is integer or rational arithmetic; irrational quantities
(the Euler function and pi(q) = 1/phi(1/q)) come back as RealInterval
enclosures with rational endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

from .errors import PreconditionError

Number = int | Fraction


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionError(msg)


def _qpow(q: int, e: int) -> Fraction | int:
    return q**e if e >= 0 else Fraction(1, q**-e)


# --- interval arithmetic -------------------------------------------------------


@dataclass(frozen=True)
class RealInterval:
    """Closed interval [lo, hi] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise PreconditionError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Number) -> "RealInterval":
        return cls(Fraction(x), Fraction(x))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Number | float) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def within(self, other: "RealInterval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def _coerce(self, other) -> "RealInterval":
        if isinstance(other, RealInterval):
            return other
        return RealInterval.point(other)

    def __add__(self, other) -> "RealInterval":
        o = self._coerce(other)
        return RealInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "RealInterval":
        return RealInterval(-self.hi, -self.lo)

    def __sub__(self, other) -> "RealInterval":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RealInterval":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RealInterval":
        o = self._coerce(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RealInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "RealInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return RealInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "RealInterval":
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other) -> "RealInterval":
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, n: int) -> "RealInterval":
        if n < 0:
            return self.reciprocal() ** (-n)
        if self.lo >= 0:
            return RealInterval(self.lo**n, self.hi**n)
        out = RealInterval.point(1)
        for _ in range(n):
            out = out * self
        return out

    def __lt__(self, other) -> bool:
        """Certainly less: every point of self is below every point of other."""
        return self.hi < self._coerce(other).lo

    def __gt__(self, other) -> bool:
        return self.lo > self._coerce(other).hi


def refine(make: Callable[[Fraction], RealInterval], eps: Number) -> RealInterval:
    """Call ``make`` with shrinking tolerances until the result is eps-wide."""
    eps = Fraction(eps)
    _need(eps > 0, "precision must be positive")
    tol = eps
    for _ in range(200):
        iv = make(tol)
        if iv.width <= eps:
            return iv
        tol /= 16
    raise RuntimeError("interval refinement did not converge")  # pragma: no cover


# --- q-binomials and friends ---------------------------------------------------


def qbinom(a: int, b: int, q: int) -> int:
    """Gaussian binomial [a choose b]_q: the number of b-subspaces of F_q^a."""
    _need(q >= 2, "q must be >= 2")
    _need(0 <= b <= a, f"need a >= b >= 0, got a={a}, b={b}")
    # Each partial product prod_{i<j}(q^{a-i}-1)/(q^{i+1}-1) is an integer.
    out = 1
    for i in range(b):
        out = out * (q ** (a - i) - 1) // (q ** (i + 1) - 1)
    return out


def _falling(q: int, top: int, lo: int, hi: int) -> int:
    """prod_{i=lo}^{hi-1} (q^top - q^i); empty product is 1."""
    out = 1
    for i in range(lo, hi):
        out *= q**top - q**i
    return out


def gl_order(n: int, q: int) -> int:
    return _falling(q, n, 0, n)


def nu(N: int, k: int, l: int, q: int) -> int:
    """k-subspaces of F_q^N meeting both of two (N-k)-spaces whose
    intersection has dimension ``l``."""
    _need(N >= 3, "N must be >= 3")
    _need(1 <= k <= N - 1, f"need 1 <= k <= N-1, got k={k}")
    _need(max(0, N - 2 * k) <= l <= N - k, f"l={l} outside [{max(0, N - 2 * k)}, {N - k}]")
    c = N - k
    return qbinom(N, k, q) - 2 * q ** (k * c) + q ** ((2 * k - N + l) * c) * _falling(q, c, l, c)


def theta(n: int, u: int, i: int, q: int) -> int:
    """Ordered pairs of u-subspaces of F_q^n meeting in dimension i."""
    _need(0 <= u <= n, f"need 0 <= u <= n, got u={u}")
    _need(max(0, 2 * u - n) <= i <= u, f"i={i} outside [{max(0, 2 * u - n)}, {u}]")
    total = 0
    for j in range(i, u + 1):
        term = q ** comb(j - i, 2) * qbinom(n, i, q) * qbinom(n - i, j - i, q) * qbinom(n - j, u - j, q) ** 2
        total += -term if (j - i) % 2 else term
    return total


def ball_size(n: int, m: int, r: int, q: int) -> int:
    """Number of n x m matrices over F_q of rank at most r."""
    _need(m >= n >= 1, f"need m >= n >= 1, got n={n}, m={m}")
    _need(0 <= r <= n, f"radius {r} outside [0, {n}]")
    return sum(qbinom(n, i, q) * _falling(q, m, 0, i) for i in range(r + 1))


@dataclass(frozen=True)
class QPolynomial:
    """Integer polynomial in lambda; ``coeffs[i]`` multiplies lambda^i."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPolynomial(tuple(out))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c:
                mono = "" if i == 0 else ("lambda" if i == 1 else f"lambda^{i}")
                if mono and c == 1:
                    terms.append(mono)
                elif mono and c == -1:
                    terms.append("-" + mono)
                else:
                    terms.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(terms).replace("+ -", "- ")


def char_poly_linear(k: int, q: int) -> QPolynomial:
    """Characteristic polynomial prod_{i<k}(lambda - q^i) of a k-space."""
    _need(k >= 0, "k must be >= 0")
    poly = QPolynomial((1,))
    for i in range(k):
        poly = poly * QPolynomial((-(q**i), 1))
    return poly


def tau_linear(r: int, k: int, N: int, q: int) -> int:
    """r-tuples of functionals on F_q^N whose joint kernel avoids a fixed
    k-space (apart from 0)."""
    _need(r >= 1, "r must be >= 1")
    _need(0 <= k <= N, f"need 0 <= k <= N, got k={k}")
    return q ** (r * (N - k)) * char_poly_linear(k, q)(q**r)


# --- Euler function and pi(q) --------------------------------------------------


def pentagonal_exponents(limit: int) -> list[tuple[int, int]]:
    """(exponent, sign) of the pentagonal series terms with exponent < limit."""
    out = [(0, 1)]
    j = 1
    while j * (3 * j - 1) // 2 < limit:
        s = -1 if j % 2 else 1
        for e in (j * (3 * j - 1) // 2, j * (3 * j + 1) // 2):
            if e < limit:
                out.append((e, s))
        j += 1
    return sorted(out)


def euler_phi_interval(x: Number, eps: Number) -> RealInterval:
    """Enclosure of phi(x) = prod_{i>=1}(1 - x^i) for 0 <= x < 1, width < eps."""
    x = Fraction(x)
    eps = Fraction(eps)
    _need(eps > 0, "precision must be positive")
    _need(0 <= x < 1, "need 0 <= x < 1")
    if x == 0:
        return RealInterval.point(1)
    # Pentagonal exponents are distinct, so the dropped terms are bounded
    # by the geometric tail sum_{j>=E} x^j.
    E = 1
    while 2 * x**E / (1 - x) >= eps:
        E += 1
    s = sum(sign * x**e for e, sign in pentagonal_exponents(E))
    tail = x**E / (1 - x)
    return RealInterval(s - tail, s + tail)


def pi_q_interval(q: int, eps: Number) -> RealInterval:
    """Enclosure of pi(q) = prod_{i>=1} q^i/(q^i - 1), width <= eps."""
    _need(q >= 2, "q must be >= 2")
    return refine(lambda t: euler_phi_interval(Fraction(1, q), t).reciprocal(), eps)


# --- asymptotic estimates ------------------------------------------------------


def _nu_domain(N: int, k: int, l: int) -> None:
    _need(N >= 3 and 1 <= k <= N - 1, f"bad (N, k) = ({N}, {k})")
    _need(max(0, N - 2 * k) <= l <= N - k, f"l={l} outside [{max(0, N - 2 * k)}, {N - k}]")


def nu_asym_q(N: int, k: int, l: int, q: int) -> Fraction:
    """Leading-order estimate of nu(N, k, l, q) as q grows, at this q."""
    _nu_domain(N, k, l)
    low = max(0, N - 2 * k)
    top = k * (N - k)
    if l == N - k:
        return Fraction(q ** (top - 1))
    if l == N - k - 1 and l > low:
        return Fraction(2 * q ** (top - 2))
    return Fraction(q ** (top - 2))


def delta_gap(N: int, k: int, l: int, q: int) -> Fraction:
    """Exact nu(N,k,N-k)^2 / qbinom(N,k) - nu(N,k,l)."""
    _nu_domain(N, k, l)
    return Fraction(nu(N, k, N - k, q) ** 2, qbinom(N, k, q)) - nu(N, k, l, q)


def delta_asym_q(N: int, k: int, l: int, q: int) -> Fraction:
    """Leading-order estimate of :func:`delta_gap` as q grows, at this q."""
    _nu_domain(N, k, l)
    top = k * (N - k)
    if l == N - 2 * k:
        return Fraction(_qpow(q, top - N + k - 1))
    if l == 0:
        return Fraction(_qpow(q, top - k - 1))
    return -Fraction(_qpow(q, top - N + k + l - 1))


def qbinom_asym_m(a: int, b: int, q: int, m: int, eps: Number = Fraction(1, 10**12)) -> RealInterval:
    """q^{m^2 b(a-b)} pi(q), the large-m estimate of qbinom(ma, mb, q)."""
    _need(a > b > 0, f"need a > b > 0, got a={a}, b={b}")
    return pi_q_interval(q, eps) * q ** (m * m * b * (a - b))


def nu_asym_m(n: int, d: int, i: int, q: int, m: int, eps: Number = Fraction(1, 10**12)) -> RealInterval:
    """Large-m estimate of nu(mn, m(n-d+1), mi, q); eps bounds the width of pi(q)."""
    _need(d >= 2, "d must be >= 2")
    _need(0 <= i <= d - 1, f"i={i} outside [0, {d - 1}]")
    pi = pi_q_interval(q, eps)
    scale = q ** (m * m * (n - d + 1) * (d - 1))
    if i == d - 1:
        return (pi - 1) * scale
    return (pi - 1) ** 2 / pi * scale


def alternating_exp_partial(m: int) -> Fraction:
    """sum_{i=0}^{m} (-1)^i / i!."""
    out = Fraction(0)
    f = 1
    for i in range(m + 1):
        if i:
            f *= i
        out += Fraction((-1) ** i, f)
    return out

