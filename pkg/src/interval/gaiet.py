"""
Affine Interval Maps With Gaps.
Piecewise-affine, orientation-preserving, injective maps of an interval, and
the first-return map T_θ of the quadrilateral written in closed form.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

from src.config.settings import IntervalParams
from src.utils.scalars import Scalar, is_exact


@dataclass(frozen=True)
class Branch:
    """x ↦ slope·x + offset on [lo, hi)."""

    lo: Scalar
    hi: Scalar
    slope: Scalar
    offset: Scalar

    def __call__(self, x: Scalar) -> Scalar:
        return self.slope * x + self.offset

    @property
    def image(self) -> tuple[Scalar, Scalar]:
        return self(self.lo), self(self.hi)


@dataclass(frozen=True)
class GaietMap:
    """
    Ordered branches covering [lo, hi].

    Evaluation is right-continuous at interior breakpoints unless `side="left"`.
    `tan_theta` is set for maps built from the quadrilateral.
    """

    branches: tuple[Branch, ...]
    tan_theta: Scalar | None = None

    @property
    def lo(self) -> Scalar:
        return self.branches[0].lo

    @property
    def hi(self) -> Scalar:
        return self.branches[-1].hi

    @property
    def singularities(self) -> tuple[Scalar, ...]:
        return tuple(b.lo for b in self.branches[1:])

    @property
    def exact(self) -> bool:
        return all(is_exact(b.slope) and is_exact(b.offset) for b in self.branches)

    def branch_index(self, x: Scalar, side: str = "right") -> int:
        index = 0
        for k, s in enumerate(self.singularities, start=1):
            if x > s or (side == "right" and x == s):
                index = k
        return index

    def __call__(self, x: Scalar, side: str = "right") -> Scalar:
        return self.branches[self.branch_index(x, side)](x)

    def left_limit(self, x: Scalar) -> Scalar:
        return self(x, side="left")

    def is_singular(self, x: Scalar, tol: float = IntervalParams.SINGULAR_TOL) -> bool:
        """True when x sits on a breakpoint (exactly, or within `tol` for floats)."""
        for s in self.singularities:
            if x == s or (not (is_exact(x) and is_exact(s)) and abs(x - s) < tol):
                return True
        return False

    def images(self) -> list[tuple[Scalar, Scalar]]:
        return [b.image for b in self.branches]

    def is_injective(self) -> bool:
        """Orientation-preserving branches with pairwise disjoint images."""
        if any(b.slope <= 0 for b in self.branches):
            return False
        spans = sorted(self.images())
        return all(a[1] <= b[0] for a, b in zip(spans, spans[1:], strict=False))

    def preimage(self, y: Scalar) -> Scalar | None:
        """The unique x with T(x) = y, or None when y lies in a gap."""
        last = len(self.branches) - 1
        for k, branch in enumerate(self.branches):
            x = (y - branch.offset) / branch.slope
            if branch.lo <= x < branch.hi or (k == last and x == branch.hi):
                return x
        return None


def _snap(s: Scalar) -> Scalar:
    """Float breakpoints within rounding of 0 or 1 are moved onto them."""
    if is_exact(s):
        return s
    if abs(s) < IntervalParams.SNAP_TOL:
        return 0.0
    if abs(s - 1) < IntervalParams.SNAP_TOL:
        return 1.0
    return s


def singular_parameter(tan_theta: Scalar) -> Scalar:
    """s(θ) = 2 tanθ − 1: the point of [A,B] aimed at C."""
    return _snap(2 * tan_theta - 1)


def t_theta_from_tan(tan_theta: Scalar) -> GaietMap:
    """
    T_θ on [A,B] ≅ [0,1] for tanθ ∈ [0, 1].

    Exact (Fraction) input gives an exact map.
    """
    if not 0 <= tan_theta <= 1:
        raise ValueError(f"tanθ={tan_theta!r} outside [0, 1]")
    m = Fraction(tan_theta) if isinstance(tan_theta, int) else tan_theta
    one = Fraction(1) if is_exact(m) else 1.0
    slope = one / IntervalParams.SLOPE
    s = singular_parameter(m)
    # Below s the ray exits through [C,D]; above it through [B,C].
    first = (17 - 4 * m) / 16
    second = (3 - 3 * m) / 4 - slope
    zero = one - one

    if s <= 0:
        return GaietMap((Branch(zero, one, slope, second),), m)
    if s >= 1:
        return GaietMap((Branch(zero, one, slope, first),), m)
    return GaietMap((Branch(zero, s, slope, first), Branch(s, one, slope, second)), m)


def t_theta(theta: float) -> GaietMap:
    """T_θ for an angle θ ∈ [0, π/4] (float backend)."""
    if not -1e-15 <= theta <= IntervalParams.THETA_MAX + 1e-15:
        raise ValueError(f"θ={theta!r} outside [0, π/4]")
    if abs(theta - IntervalParams.THETA_MAX) <= 1e-15:
        return t_theta_from_tan(1.0)
    return t_theta_from_tan(min(max(math.tan(theta), 0.0), 1.0))
