"""
Limit Circles In L₀.
For l ∈ (Ĉ∖R) ∪ {0} the curve t ↦ l/(2πμ₀(lt + 1)), t ∈ R ∪ {∞}, in the
γ₂-plane of L₀ is a circle through the origin, degenerating to the origin
for l = 0 and to the line directed by 1/μ₀ for l = ∞.
"""

import cmath
from dataclasses import dataclass
import math
from typing import Literal

import numpy as np

from src.field.vector_field import FieldParams
from src.utils.errors import RealNonzeroLError


@dataclass(frozen=True)
class LimitCircle:
    kind: Literal["point", "circle", "line"]
    l_value: complex
    alpha0: complex
    center: complex = 0j
    radius: float = 0.0
    direction: complex = 0j

    def point(self, t: float) -> complex:
        """The parameterization at t (t = ∞ gives the origin)."""
        if math.isinf(t) or self.kind == "point":
            return 0j
        if self.kind == "line":
            return 1 / (self.alpha0 * t) if t != 0 else complex(math.inf)
        return self.l_value / (self.alpha0 * (self.l_value * t + 1))

    def distance(self, z):
        """Euclidean distance from z (scalar or array) to the set."""
        z = np.asarray(z, dtype=complex)
        if self.kind == "point":
            return np.abs(z)
        if self.kind == "circle":
            return np.abs(np.abs(z - self.center) - self.radius)
        unit = self.direction / abs(self.direction)
        return np.abs((z * np.conj(unit)).imag)


def limit_circle(params: FieldParams, l_value: complex) -> LimitCircle:
    """
    Raises:
        RealNonzeroLError: l is real and nonzero.
    """
    alpha0 = params.alpha0
    if cmath.isinf(l_value):
        return LimitCircle("line", l_value, alpha0, direction=1 / params.mu0)
    l_value = complex(l_value)
    if l_value == 0:
        return LimitCircle("point", l_value, alpha0)
    if l_value.imag == 0:
        raise RealNonzeroLError(l_value)
    # 1/(α₀(t + c)) with c = 1/l inverts the line Im = Im c.
    b = (1 / l_value).imag
    center = -1j / (2 * b * alpha0)
    radius = 1 / (2 * abs(b) * abs(alpha0))
    return LimitCircle("circle", l_value, alpha0, center=center, radius=radius)
