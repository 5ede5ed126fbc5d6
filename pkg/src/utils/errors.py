"""
Domain Errors.
Every failure raised by the library derives from `DilationSurfaceError` and
carries its payload as attributes so orchestrators can report it.
"""

from typing import Any


class DilationSurfaceError(Exception):
    """Base class for all library errors."""


class InconsistentModelError(DilationSurfaceError):
    """A recomputed surface quantity deviates from the stored cone data."""

    def __init__(self, field: str, expected: Any, got: Any):
        self.field = field
        self.expected = expected
        self.got = got
        super().__init__(f"{field}: expected {expected!r}, got {got!r}")


class VertexHitError(DilationSurfaceError):
    """A point handed to a gluing sits on an edge endpoint."""

    def __init__(self, point: Any, vertex: str):
        self.point = point
        self.vertex = vertex
        super().__init__(f"point {point!r} is at vertex {vertex}")


class SingularityHitError(DilationSurfaceError):
    """A geodesic runs into a vertex of the quadrilateral."""

    def __init__(self, step: int, vertex: str | None):
        self.step = step
        self.vertex = vertex
        where = vertex if vertex is not None else "an edge endpoint"
        super().__init__(f"geodesic hits {where} at step {step}")


class PhaseSpaceError(DilationSurfaceError):
    """A phase point is not in the section (outside its edge or pointing out)."""


class SingularOrbitError(DilationSurfaceError):
    """An interval-map orbit lands on the singularity."""

    def __init__(self, step: int, x: Any):
        self.step = step
        self.x = x
        super().__init__(f"orbit hits the singularity at step {step} (x={x!r})")


class NotAttainedError(DilationSurfaceError):
    """The requested rotation number is not a value of rot on the domain."""


class GapHitsSingularityError(DilationSurfaceError):
    """No cover interval contains the singularity at the given depth."""

    def __init__(self, depth: int):
        self.depth = depth
        super().__init__(f"a gap iterate contains the singularity at depth {depth}")


class OrbitDiesError(DilationSurfaceError):
    """An orbit used for accumulation sets hits the singularity exactly."""

    def __init__(self, step: int):
        self.step = step
        super().__init__(f"orbit dies on the singularity at step {step}")


class BudgetExhaustedError(DilationSurfaceError):
    """The induction did not stop within the step budget."""

    def __init__(self, state: Any):
        self.state = state
        super().__init__(f"induction still running after {len(state.word)} steps")


class EmptyWordIntervalError(DilationSurfaceError):
    """No singularity parameter follows the given word."""

    def __init__(self, word: str):
        self.word = word
        super().__init__(f"word {word or '∅'!r} is not realizable")


class NotApplicableError(DilationSurfaceError):
    """The operation's precondition does not hold for this input."""


class StiffnessFailureError(DilationSurfaceError):
    """The step size underflowed without a blow-up signature."""

    def __init__(self, t: float, h: float):
        self.t = t
        self.h = h
        super().__init__(f"step size {h:.3e} underflowed at t={t:.17g}")


class TooCloseToSingularityError(DilationSurfaceError):
    """The projected path comes too close to a characteristic direction."""

    def __init__(self, distance: float):
        self.distance = distance
        super().__init__(f"projection within {distance:.3e} of a singular point")


class BranchAmbiguityError(DilationSurfaceError):
    """A continuous branch of the developing form cannot be tracked."""


class RealNonzeroLError(DilationSurfaceError):
    """Limit circles do not exist for real nonzero parameters."""

    def __init__(self, l_value: Any):
        self.l_value = l_value
        super().__init__(f"l={l_value!r} is real and nonzero")


class PrecisionLossError(DilationSurfaceError):
    """The float backend collapsed an interval or length."""
