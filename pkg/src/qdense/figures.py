"""CSV tables of bound curves over a list of field sizes."""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Sequence

from .bounds import euler_power_m_bound, generic_density_bounds, mrd_density_upper_m, mrd_density_upper_q
from .errors import PreconditionError
from .gf import is_prime
from .render import DEFAULT_PLACES, render_decimal, render_interval_decimal

FIG1_HEADER = ("q", "bound_mrd_q", "bound_generic")
FIG2_HEADER = ("q", "bound_prior_m", "bound_mrd_m")

# fixed parameters of the two tables
FIG1_PARAMS = {"n": 3, "m": 5, "d": 3, "k": 5}
FIG2_PARAMS = {"n": 3, "d": 3}


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(p for p in range(2, q + 1) if q % p == 0)
    while q % p == 0:
        q //= p
    return q == 1 and is_prime(p)


def _check_qs(qs: Sequence[int]) -> None:
    bad = [q for q in qs if not is_prime_power(q)]
    if bad:
        raise PreconditionError(f"not prime powers: {bad}")


def fig1_rows(qs: Sequence[int], places: int = DEFAULT_PLACES) -> list[tuple[str, str, str]]:
    """MRD-specific and generic upper bounds on 3x5 distance-3 code density."""
    _check_qs(qs)
    n, m, d, k = (FIG1_PARAMS[x] for x in ("n", "m", "d", "k"))
    return [
        (
            str(q),
            render_decimal(mrd_density_upper_q(n, m, d, q), places),
            render_decimal(generic_density_bounds(n, m, k, d, q).upper, places),
        )
        for q in qs
    ]


def fig2_rows(qs: Sequence[int], places: int = DEFAULT_PLACES) -> list[tuple[str, str, str]]:
    """Large-m bounds at n = d = 3: the Euler-power bound and the pi(q) bound."""
    _check_qs(qs)
    n, d = FIG2_PARAMS["n"], FIG2_PARAMS["d"]
    start = Fraction(1, 10 ** (places + 2))
    return [
        (
            str(q),
            render_interval_decimal(lambda t, q=q: euler_power_m_bound(n, d, q, t), places, start),
            render_interval_decimal(lambda t, q=q: mrd_density_upper_m(n, d, q, t), places, start),
        )
        for q in qs
    ]


def to_csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO(newline="")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def figure_csv(which: str, qs: Sequence[int], places: int = DEFAULT_PLACES) -> str:
    if which == "fig1":
        return to_csv(FIG1_HEADER, fig1_rows(qs, places))
    if which == "fig2":
        return to_csv(FIG2_HEADER, fig2_rows(qs, places))
    raise PreconditionError(f"unknown figure {which!r}")
