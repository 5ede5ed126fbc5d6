"""
Scalar Backends.
Interval maps and renormalization run either on floats (sweeps) or on exact
`Fraction`s (deep orbits, parameter-space intervals).
"""

from enum import StrEnum
from fractions import Fraction
import math

Scalar = float | Fraction


class Backend(StrEnum):
    """Arithmetic used by interval maps and renormalization."""

    FLOAT = "float"
    RATIONAL = "rational"


def parse_scalar(text: str | int | float | Fraction, backend: Backend) -> Scalar:
    """
    Parses "p/q", decimals and integers.

    Under the rational backend decimals are read exactly ("0.7" -> 7/10).
    """
    if isinstance(text, Fraction):
        value = text
    elif isinstance(text, float):
        value = Fraction(text)
    else:
        value = Fraction(str(text).strip())
    if backend is Backend.RATIONAL:
        return value
    if isinstance(text, float):
        return text
    return float(value)


def to_backend(value: Scalar | int, backend: Backend) -> Scalar:
    """Converts a number to the arithmetic of `backend`."""
    if backend is Backend.RATIONAL:
        return value if isinstance(value, Fraction) else Fraction(value)
    return float(value)


def backend_of(value: Scalar | int) -> Backend:
    """Backend implied by a value (ints count as exact)."""
    return Backend.FLOAT if isinstance(value, float) else Backend.RATIONAL


def is_exact(value: object) -> bool:
    """True for Fractions and ints."""
    return isinstance(value, Fraction | int)


def log_abs(value: Scalar | int) -> float:
    """
    Natural log of |value|, exact-safe for Fractions far below the float range.
    """
    if isinstance(value, Fraction):
        if value == 0:
            return -math.inf
        return math.log(abs(value.numerator)) - math.log(value.denominator)
    if value == 0:
        return -math.inf
    return math.log(abs(value))


def format_scalar(value: Scalar | int) -> str:
    """Fractions as p/q, floats with 17 significant digits."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return f"{float(value):.17g}"
