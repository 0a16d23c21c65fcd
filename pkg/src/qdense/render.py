"""Text rendering of exact numbers, and parsing back."""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError
from .qfunc import RealInterval, refine

DEFAULT_PLACES = 12


def fraction_str(x: int | Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def round_half_even(x: Fraction, places: int) -> int:
    """x * 10^places rounded to an integer, ties to even."""
    # Python's round on Fraction is exact and ties to even
    return round(Fraction(x) * 10**places)


def render_decimal(x: int | Fraction, places: int = DEFAULT_PLACES) -> str:
    scaled = round_half_even(Fraction(x), places)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def render_interval_decimal(make, places: int = DEFAULT_PLACES, start_eps: Fraction | None = None) -> str:
    """Decimal rendering of a real given by ``make(eps) -> RealInterval``.

    The enclosure is tightened until both endpoints round to the same string,
    so the result is the correctly rounded value.
    """
    eps = start_eps if start_eps is not None else Fraction(1, 10 ** (places + 2))
    for _ in range(40):
        iv = refine(make, eps)
        lo, hi = render_decimal(iv.lo, places), render_decimal(iv.hi, places)
        if lo == hi:
            return lo
        eps /= 1000
    raise PreconditionError("value sits too close to a rounding boundary")


def interval_dict(iv: RealInterval, places: int = DEFAULT_PLACES) -> dict:
    return {
        "lo": fraction_str(iv.lo),
        "hi": fraction_str(iv.hi),
        "lo_decimal": render_decimal(iv.lo, places),
        "hi_decimal": render_decimal(iv.hi, places),
    }


def parse_number(text: str) -> Fraction:
    """Inverse of ``fraction_str`` and ``render_decimal``."""
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"not a number: {text!r}") from exc
