"""
Quadrilateral To Model Class.
For tanθ ∈ [13/21, 16/17] the breakpoint of T_θ lies inside the window
J = [T_θ(s⁺), T_θ(s⁻)], J is invariant, and T_θ restricted to J is a
two-interval map with both factors 1/16.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

from src.interval.gaiet import singular_parameter, t_theta_from_tan
from src.renorm.model import ModelMap
from src.surface.affine import AffineMap
from src.utils.errors import NotApplicableError
from src.utils.scalars import Scalar

TAN_LOWER = Fraction(13, 21)
TAN_UPPER = Fraction(16, 17)


@dataclass(frozen=True)
class RestrictedModel:
    """T_θ on its trapping window, with the affine change of coordinates."""

    tan_theta: Scalar
    window: tuple[Scalar, Scalar]
    model: ModelMap
    normalization: AffineMap

    def to_model(self, x: Scalar) -> Scalar:
        return self.normalization(x)

    def from_model(self, y: Scalar) -> Scalar:
        return self.normalization.inverse()(y)


def tan_theta_to_model(tan_theta: Scalar) -> RestrictedModel:
    """
    Restricts T_θ to J and rescales J onto [0, 1].

    Raises:
        NotApplicableError: tanθ outside [13/21, 16/17], where the
            restriction is not a two-interval map, or exactly at an end,
            where one of the two intervals is empty.
    """
    if not TAN_LOWER <= tan_theta <= TAN_UPPER:
        raise NotApplicableError(f"tanθ={tan_theta!r} outside [13/21, 16/17]")
    base = t_theta_from_tan(tan_theta)
    s = singular_parameter(base.tan_theta)
    lo, hi = base(s), base.left_limit(s)
    if not lo < s < hi:
        raise NotApplicableError(f"breakpoint on the edge of J at tanθ={tan_theta!r}")
    width = hi - lo
    normalization = AffineMap(1 / width, -lo / width)
    lam = base.branches[0].slope
    model = ModelMap(lam, lam, (s - lo) / width, (hi - s) / width)
    return RestrictedModel(base.tan_theta, (lo, hi), model, normalization)


def t_theta_to_model(theta: float) -> RestrictedModel:
    """Float-angle front end of `tan_theta_to_model`."""
    return tan_theta_to_model(math.tan(theta))
