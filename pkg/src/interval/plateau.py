"""
Rotation Plateaus.
rot⁻¹(p/q) is an interval of angles; its ends are saddle connections where
the breakpoint is periodic for a one-sided extension, except at the ends of
the domain (θ̃ and π/4).
"""

from dataclasses import dataclass
from fractions import Fraction
import math
from typing import Literal

from src.config.settings import IntervalParams
from src.interval.gaiet import t_theta, t_theta_from_tan
from src.interval.rotation import detect_periodic_orbit, rotation_number_exact
from src.utils.errors import NotAttainedError, SingularOrbitError
from src.utils.logger import log

EndpointKind = Literal["saddle_connection", "domain_edge", "unresolved"]


@dataclass(frozen=True)
class PlateauEndpoint:
    theta: float
    kind: EndpointKind
    tan_exact: Fraction | None = None
    side: Literal["left", "right"] | None = None
    period: int | None = None

    @property
    def degrees(self) -> float:
        return math.degrees(self.theta)


@dataclass(frozen=True)
class Plateau:
    target: Fraction
    lower: PlateauEndpoint
    upper: PlateauEndpoint


def compare_rotation(theta: float, target: Fraction) -> int:
    """Sign of transl(θ) − target."""
    result = rotation_number_exact(
        t_theta(theta),
        side="right",
        fallback_iters=IntervalParams.PLATEAU_FALLBACK_ITERS,
    )
    if isinstance(result.value, Fraction):
        diff = result.value - target
        return (diff > 0) - (diff < 0)
    estimate = result.value.estimate
    return 1 if estimate > target else -1


def _branch_formula(index: int, x: Fraction, m: Fraction) -> Fraction:
    if index == 0:
        return x / 16 + (17 - 4 * m) / 16
    return (x - 1) / 16 + (3 - 3 * m) / 4


def _saddle_residual(itinerary: tuple[int, ...], m: Fraction) -> Fraction:
    """Return of the breakpoint along `itinerary`, minus the breakpoint."""
    s = 2 * m - 1
    x = s
    for index in itinerary:
        x = _branch_formula(index, x, m)
    return x - s


def exact_saddle_tan(theta: float, inward: float) -> PlateauEndpoint:
    """
    Recovers the exact tanθ of a plateau end from a nearby interior angle.

    The periodic orbit just inside the plateau is followed along its
    itinerary starting at the point nearest the breakpoint; the closing
    equation is affine in tanθ, so its root is rational.
    """
    nearby = theta + inward
    base = t_theta(nearby)
    try:
        orbit = detect_periodic_orbit(base, side="right")
    except SingularOrbitError:
        orbit = None
    if orbit is None or len(base.singularities) != 1:
        return PlateauEndpoint(theta, "unresolved")

    s = base.singularities[0]
    k = min(range(orbit.q), key=lambda i: abs(float(orbit.points[i]) - s))
    itinerary = orbit.itinerary[k:] + orbit.itinerary[:k]
    g0 = _saddle_residual(itinerary, Fraction(0))
    g1 = _saddle_residual(itinerary, Fraction(1))
    if g0 == g1:
        return PlateauEndpoint(theta, "unresolved")
    m = g0 / (g0 - g1)
    if abs(float(m) - math.tan(theta)) > 1e-8:
        return PlateauEndpoint(theta, "unresolved")

    # The saddle orbit must follow its itinerary with the breakpoint itself
    # taken on the side recorded first.
    exact_map = t_theta_from_tan(m)
    side = "left" if itinerary[0] == 0 else "right"
    x = exact_map.singularities[0]
    for step, index in enumerate(itinerary):
        if exact_map.branch_index(x, side if step == 0 else "right") != index:
            return PlateauEndpoint(theta, "unresolved")
        x = exact_map.branches[index](x)
    if x != exact_map.singularities[0]:
        return PlateauEndpoint(theta, "unresolved")
    return PlateauEndpoint(theta, "saddle_connection", m, side, orbit.q)


def _bisect_edge(outside: float, inside: float, target: Fraction) -> float:
    width = IntervalParams.BISECTION_WIDTH
    while abs(inside - outside) > width:
        mid = (outside + inside) / 2
        if compare_rotation(mid, target) == 0:
            inside = mid
        else:
            outside = mid
    return (outside + inside) / 2


def plateau_endpoints(p: int, q: int) -> Plateau:
    """
    Bisects for the plateau of transl = p/q on (θ̃, π/4).

    Raises:
        NotAttainedError: p/q is not a value of transl there.
    """
    target = Fraction(p, q)
    lo, hi = IntervalParams.THETA_TILDE, IntervalParams.THETA_MAX
    if not 0 <= target <= 1:
        raise NotAttainedError(f"{target} is outside [0, 1]")

    log.info(f"🔎 Searching plateau transl = {target}...")
    left, right = lo, hi
    inside = None
    while right - left > IntervalParams.BISECTION_WIDTH / 10:
        mid = (left + right) / 2
        sign = compare_rotation(mid, target)
        if sign == 0:
            inside = mid
            break
        if sign > 0:
            left = mid
        else:
            right = mid
    if inside is None:
        raise NotAttainedError(f"no angle with transl = {target}")

    lower_theta = _bisect_edge(left, inside, target)
    upper_theta = _bisect_edge(right, inside, target)
    edge_tol = IntervalParams.DOMAIN_EDGE_TOL
    step_in = 1e-9

    if lower_theta - lo < edge_tol:
        lower = PlateauEndpoint(lo, "domain_edge")
    else:
        lower = exact_saddle_tan(lower_theta, step_in)
    if hi - upper_theta < edge_tol:
        upper = PlateauEndpoint(hi, "domain_edge")
    else:
        upper = exact_saddle_tan(upper_theta, -step_in)

    log.info(
        f"✅ Plateau {target}: [{math.degrees(lower.theta):.6f}°, "
        f"{math.degrees(upper.theta):.6f}°]"
    )
    return Plateau(target, lower, upper)
