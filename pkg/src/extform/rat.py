"""Exact rational scalars.

``Rat`` is :class:`fractions.Fraction`: always in lowest terms with a positive
denominator.  The helpers here parse and print rationals in the ``p/q`` form
used by the LP dump and the graph JSON format.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Union

Rat = Fraction
RatLike = Union[Fraction, int, str]


def as_rat(value: RatLike) -> Fraction:
    """Convert ``value`` to a Fraction without ever going through a float."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        return parse_rat(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def parse_rat(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a decimal string like ``"2.75"`` exactly."""
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    if "/" in s:
        num, _, den = s.partition("/")
        q = int(den)
        if q == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), q)
    try:
        return Fraction(Decimal(s))
    except Exception as exc:  # decimal.InvalidOperation
        raise ValueError(f"not a rational: {text!r}") from exc


def fmt_rat(value: Fraction) -> str:
    """``p/q`` (or just ``p`` for integers)."""
    value = as_rat(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def fmt_rat_approx(value: Fraction, digits: int = 6) -> str:
    """``p/q (decimal)``; the decimal is only for humans."""
    value = as_rat(value)
    exact = fmt_rat(value)
    if value.denominator == 1:
        return exact
    approx = f"{float(value):.{digits}g}"
    return f"{exact} ({approx})"
