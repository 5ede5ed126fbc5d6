"""
Poincaré-Section State.
A phase point is an entry edge, an arclength fraction on it and a direction
vector. Directions are kept as (unnormalized) real pairs so that tracing with
Fraction coordinates and rational slopes is exact.
"""

from dataclasses import dataclass, field
from enum import StrEnum
import math

from src.utils.scalars import Scalar


class Termination(StrEnum):
    """Why an orbit record stopped."""

    BUDGET = "budget"
    SINGULARITY_HIT = "singularity_hit"
    TRAPPED_FINITE_TIME = "trapped_finite_time"


@dataclass(frozen=True)
class PhasePoint:
    """(edge, s, direction): a point of the section Ω."""

    edge: str
    s: Scalar
    direction: tuple[Scalar, Scalar]

    @property
    def theta(self) -> float:
        """Direction angle against the positive real half-line, in (−π, π]."""
        return math.atan2(float(self.direction[1]), float(self.direction[0]))

    @classmethod
    def from_angle(cls, edge: str, s: Scalar, theta: float) -> "PhasePoint":
        return cls(edge, s, (math.cos(theta), math.sin(theta)))

    @classmethod
    def from_slope(cls, edge: str, s: Scalar, slope: Scalar) -> "PhasePoint":
        """Direction (1, slope); exact when `s` and `slope` are Fractions."""
        return cls(edge, s, (type(slope)(1), slope))


@dataclass(frozen=True)
class Crossing:
    """One boundary crossing: where the ray left and where it re-enters."""

    exit_edge: str
    exit_s: Scalar
    exit_direction: tuple[Scalar, Scalar]
    time: Scalar
    entry: PhasePoint

    def reversed_exit(self) -> PhasePoint:
        """The phase point retracing this segment backwards."""
        dx, dy = self.exit_direction
        return PhasePoint(self.exit_edge, self.exit_s, (-dx, -dy))


@dataclass(frozen=True)
class OrbitStep:
    """Entry point after a crossing with the bookkeeping of its segment."""

    point: PhasePoint
    exit_edge: str
    segment_length: float
    speed_scale: float
    log_speed_scale: float
    cumulative_length: float


@dataclass
class OrbitRecord:
    """Traced orbit with its termination reason."""

    initial: PhasePoint
    steps: list[OrbitStep] = field(default_factory=list)
    termination: Termination = Termination.BUDGET
    singular_step: int | None = None

    @property
    def cumulative_length(self) -> float:
        return self.steps[-1].cumulative_length if self.steps else 0.0
