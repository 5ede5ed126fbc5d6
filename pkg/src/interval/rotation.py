"""
Translation and Rotation Numbers.
Orbit averages of the lift, exact detection of attracting periodic orbits,
and a numpy sweep over many angles at once.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from src.config.settings import IntervalParams
from src.interval.gaiet import Branch, GaietMap
from src.interval.lift import LiftMap, lift
from src.utils.errors import SingularOrbitError
from src.utils.logger import log
from src.utils.scalars import Scalar


@dataclass(frozen=True)
class IrrationalEstimate:
    """(T̃^n(x₀) − x₀)/n with the degree-one bound 1/n."""

    estimate: float
    error_bound: float


@dataclass(frozen=True)
class PeriodicOrbit:
    """Witness of a rational translation number: T̃^q(x) = x + p."""

    p: int
    q: int
    points: tuple[Scalar, ...]
    itinerary: tuple[int, ...]
    exact: bool


@dataclass(frozen=True)
class LiftIterationTrace:
    """Witness of an estimate: where the averaged orbit started and ended."""

    x0: float
    n: int
    final: float


@dataclass(frozen=True)
class RotationResult:
    """
    Translation number with its witness.

    `sides` holds the left and right results when the orbit landed on the
    breakpoint; `value` and `witness` are then the right-continuous ones.
    """

    value: Fraction | IrrationalEstimate
    witness: PeriodicOrbit | LiftIterationTrace
    sides: tuple["RotationResult", "RotationResult"] | None = None

    @property
    def is_rational(self) -> bool:
        return isinstance(self.value, Fraction)

    @property
    def translation(self) -> float:
        if isinstance(self.value, Fraction):
            return float(self.value)
        return self.value.estimate

    @property
    def rotation(self) -> float:
        """Translation number mod 1."""
        return self.translation % 1.0


def _start(base: GaietMap, x0: Scalar | None) -> Scalar:
    if x0 is not None:
        return x0
    return Fraction(1, 2) if base.exact else 0.5


def _advance(
    lifted: LiftMap, x: Scalar, side: str | None, step: int
) -> tuple[Scalar, int]:
    if side is None:
        if lifted.base.is_singular(x):
            raise SingularOrbitError(step, x)
        return lifted.step(x)
    return lifted.step(x, side)


def translation_number(
    lifted: LiftMap, x0: Scalar, n: int, side: str = "right"
) -> IrrationalEstimate:
    """Estimate (T̃^n(x₀) − x₀)/n, run in floats."""
    x = float(x0) % 1.0
    base = lifted.base
    if base.exact:
        lifted = lift(_float_copy(base))
    displacement = 0
    for _ in range(n):
        x, d = lifted.step(x, side)
        displacement += d
    return IrrationalEstimate((displacement + x - float(x0) % 1.0) / n, 1.0 / n)


def _float_copy(base: GaietMap) -> GaietMap:
    return GaietMap(
        tuple(
            Branch(float(b.lo), float(b.hi), float(b.slope), float(b.offset))
            for b in base.branches
        ),
        None if base.tan_theta is None else float(base.tan_theta),
    )


def _solve_cycle(
    lifted: LiftMap, itinerary: tuple[int, ...], side: str
) -> tuple[Scalar, ...] | None:
    """Exact fixed point of the affine composition along `itinerary`."""
    base = lifted.base
    a, b = 1, 0
    for index in itinerary:
        branch = base.branches[index]
        a, b = branch.slope * a, branch.slope * b + branch.offset
    x = b / (1 - a)
    points = [x]
    for k, index in enumerate(itinerary):
        if base.branch_index(points[-1], side) != index:
            return None
        if k < len(itinerary) - 1:
            points.append(base.branches[index](points[-1]))
    closing = base.branches[itinerary[-1]](points[-1])
    tol = 0 if base.exact else IntervalParams.FLOAT_WITNESS_TOL
    if abs(closing - x) > tol:
        return None
    return tuple(points)


def detect_periodic_orbit(
    base: GaietMap,
    x0: Scalar | None = None,
    side: str | None = None,
    transient: int = IntervalParams.TRANSIENT,
    q_max: int = IntervalParams.Q_MAX,
    tol: float = IntervalParams.PERIOD_TOL,
) -> PeriodicOrbit | None:
    """
    Attracting periodic orbit of the lift, or None within `q_max`.

    Raises:
        SingularOrbitError: If `side` is None and the orbit lands on the breakpoint.
    """
    lifted = lift(base)
    x = _start(base, x0)
    step = 0
    for _ in range(transient):
        x, _ = _advance(lifted, x, side, step)
        step += 1

    anchor = x
    orbit = [x]
    itinerary = [base.branch_index(x, side or "right")]
    displacement = 0
    for q in range(1, q_max + 1):
        x, d = _advance(lifted, x, side, step)
        step += 1
        displacement += d
        if abs(x - anchor) < tol:
            cycle = tuple(itinerary)
            points = _solve_cycle(lifted, cycle, side or "right")
            exact = points is not None and base.exact
            if points is None:
                points = tuple(orbit)
            return PeriodicOrbit(displacement, q, points, cycle, exact)
        orbit.append(x)
        itinerary.append(base.branch_index(x, side or "right"))
    return None


def rotation_number_exact(
    base: GaietMap,
    x0: Scalar | None = None,
    side: str | None = None,
    fallback_iters: int = IntervalParams.FALLBACK_ITERS,
) -> RotationResult:
    """
    Rational p/q with a periodic witness when one attracts within the budget,
    otherwise an estimate over `fallback_iters` steps.

    Without a `side`, an orbit that lands on the breakpoint is followed again
    under both one-sided extensions and both results are kept.
    """
    if any(b.slope >= 1 for b in base.branches):
        raise ValueError("rotation_number_exact needs a contracting map")
    try:
        orbit = detect_periodic_orbit(base, x0, side)
    except SingularOrbitError as e:
        log.warning(f"⚠️ {e}; following both one-sided extensions")
        left = rotation_number_exact(base, x0, "left", fallback_iters)
        right = rotation_number_exact(base, x0, "right", fallback_iters)
        return RotationResult(right.value, right.witness, sides=(left, right))
    if orbit is not None:
        return RotationResult(Fraction(orbit.p, orbit.q), orbit)

    start = float(_start(base, x0))
    lifted = lift(base)
    estimate = translation_number(lifted, start, fallback_iters, side or "right")
    final = start + estimate.estimate * fallback_iters
    return RotationResult(estimate, LiftIterationTrace(start, fallback_iters, final))


def witness_residual(base: GaietMap, orbit: PeriodicOrbit, side: str = "right"):
    """T̃^q(x) − x − p at the first witness point (zero for exact witnesses)."""
    lifted = lift(base)
    x = orbit.points[0]
    return lifted.iterate(x, orbit.q, side) - x - orbit.p


def translation_number_grid(
    tans: np.ndarray, n: int, x0: float = 0.5
) -> tuple[np.ndarray, np.ndarray]:
    """
    Translation-number estimates for many tanθ values at once.

    Returns the estimates and their error bound 1/n for every entry.
    """
    m = np.asarray(tans, dtype=float)
    s = 2 * m - 1
    s = np.where(np.abs(s) < IntervalParams.SNAP_TOL, 0.0, s)
    s = np.where(np.abs(s - 1) < IntervalParams.SNAP_TOL, 1.0, s)
    two_branch = (s > 0) & (s < 1)
    first = (17 - 4 * m) / 16
    second = (3 - 3 * m) / 4

    x = np.full_like(m, x0 % 1.0)
    displacement = np.zeros_like(m)
    for _ in range(n):
        upper = x >= s
        x = np.where(upper, (x - 1) / 16 + second, x / 16 + first)
        displacement += upper & two_branch
    estimates = (displacement + x - x0 % 1.0) / n
    return estimates, np.full_like(m, 1.0 / n)


def circular_distance(a: float, b: float) -> float:
    """Distance between two rotation numbers on R/Z."""
    d = abs(a - b) % 1.0
    return min(d, 1.0 - d)
