"""Exact rationals with a +inf sentinel, and their ``"p/q"`` text form."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

INF = math.inf

Rational = Fraction
Extended = Union[Fraction, float]  # a Fraction, or INF


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions, decimal strings or ``"p/q"`` strings to a Fraction.

    Floats are converted exactly (``0.1`` becomes its binary expansion), so prefer
    strings or Fractions for anything that is not dyadic.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"{value!r} is not a finite rational")
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def as_extended(value) -> Extended:
    """Like :func:`as_rational` but also accepts +inf (``math.inf`` or ``"inf"``)."""
    if isinstance(value, float) and value == INF:
        return INF
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    return as_rational(value)


def is_inf(value) -> bool:
    return isinstance(value, float) and value == INF


def format_rational(value: Extended) -> str:
    """Canonical text: ``"p/q"`` with q > 0 and gcd(p, q) = 1, or ``"inf"``."""
    if is_inf(value):
        return "inf"
    value = as_rational(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str):
        raise ValueError(f"expected a string like 'p/q', got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def parse_extended(text: str) -> Extended:
    if isinstance(text, str) and text.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    return parse_rational(text)
