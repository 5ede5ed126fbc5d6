"""
Complex Affine Maps.
z ↦ ratio·z + offset, usable on complex numbers, on real scalars (Fraction or
float) and on real coordinate pairs so that geometry can run exactly.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

Number = Any


def _exact_parts(value: Number) -> tuple[Fraction, Fraction]:
    """Real and imaginary parts as Fractions (exact for dyadic floats)."""
    if isinstance(value, complex):
        return Fraction(value.real), Fraction(value.imag)
    return Fraction(value), Fraction(0)


@dataclass(frozen=True)
class AffineMap:
    """z ↦ ratio·z + offset with ratio ≠ 0."""

    ratio: Number
    offset: Number

    def __post_init__(self):
        if self.ratio == 0:
            raise ValueError("AffineMap ratio must be nonzero")

    def __call__(self, z: Number) -> Number:
        return self.ratio * z + self.offset

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self ∘ other."""
        return AffineMap(
            self.ratio * other.ratio, self.ratio * other.offset + self.offset
        )

    def inverse(self) -> "AffineMap":
        return AffineMap(1 / self.ratio, -self.offset / self.ratio)

    @property
    def modulus(self) -> float:
        """Derivative modulus |ratio|."""
        return abs(complex(self.ratio))

    @classmethod
    def fixing(cls, fixed: Number, source: Number, target: Number) -> "AffineMap":
        """The unique map fixing `fixed` and sending `source` to `target`."""
        ratio = (target - fixed) / (source - fixed)
        return cls(ratio, fixed - ratio * fixed)

    def apply_xy(self, x: Number, y: Number) -> tuple[Number, Number]:
        """
        Acts on a point given as a real pair.

        Coefficients are converted to Fractions, so Fraction inputs stay exact
        and float inputs come back as floats.
        """
        a, b = _exact_parts(self.ratio)
        ox, oy = _exact_parts(self.offset)
        return a * x - b * y + ox, b * x + a * y + oy

    def apply_vector_xy(self, x: Number, y: Number) -> tuple[Number, Number]:
        """Acts on a tangent vector (the linear part only)."""
        a, b = _exact_parts(self.ratio)
        return a * x - b * y, b * x + a * y
