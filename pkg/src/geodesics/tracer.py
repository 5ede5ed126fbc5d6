"""
Geodesic Tracer.
Straight segments inside the quadrilateral, glued at the boundary. Every
routine works on floats or, when positions and directions are Fractions,
exactly.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

from src.config.settings import GeodesicParams, SurfaceParams
from src.geodesics.phase import (
    Crossing,
    OrbitRecord,
    OrbitStep,
    PhasePoint,
    Termination,
)
from src.surface.model import SurfaceModel
from src.utils.errors import NotApplicableError, PhaseSpaceError, SingularityHitError
from src.utils.scalars import Scalar, is_exact, log_abs

LEFT_EDGES = frozenset({"AB", "AD"})


def _cross(a: tuple, b: tuple):
    return a[0] * b[1] - a[1] * b[0]


def _dot(a: tuple, b: tuple):
    return a[0] * b[0] + a[1] * b[1]


def _sub(a: tuple, b: tuple) -> tuple:
    return a[0] - b[0], a[1] - b[1]


def _norm(v: tuple) -> float:
    return math.hypot(float(v[0]), float(v[1]))


def _edge_xy(model: SurfaceModel, edge: str) -> tuple[tuple, tuple]:
    first, second = SurfaceParams.EDGES[edge]
    return model.vertex_xy(first), model.vertex_xy(second)


def position_xy(model: SurfaceModel, p: PhasePoint) -> tuple[Scalar, Scalar]:
    """Planar coordinates of the phase point's position."""
    start, end = _edge_xy(model, p.edge)
    d = _sub(end, start)
    return start[0] + p.s * d[0], start[1] + p.s * d[1]


def _inward_xy(model: SurfaceModel, edge: str) -> tuple[Fraction, Fraction]:
    """Exact (unnormalized) inward normal of `edge`."""
    start, end = _edge_xy(model, edge)
    d = _sub(end, start)
    normal = (-d[1], d[0])
    corners = [model.vertex_xy(name) for name in model.vertices]
    center = (
        sum(c[0] for c in corners) / len(corners),
        sum(c[1] for c in corners) / len(corners),
    )
    if _dot(normal, _sub(center, start)) < 0:
        normal = (d[1], -d[0])
    return normal


def _nearest_vertex(point: tuple, model: SurfaceModel) -> tuple[str, float]:
    best, distance = "A", math.inf
    for name in model.vertices:
        gap = _norm(_sub(point, model.vertex_xy(name)))
        if gap < distance:
            best, distance = name, gap
    return best, distance


def poincare_crossing(model: SurfaceModel, p: PhasePoint, step: int = 0) -> Crossing:
    """
    Follows the ray from `p` to the boundary and applies the gluing.

    Raises:
        PhaseSpaceError: `p` is not strictly inside its edge or points out of
            the polygon.
        SingularityHitError: The ray runs along its edge or leaves through a vertex.
    """
    exact = is_exact(p.s) and is_exact(p.direction[0]) and is_exact(p.direction[1])
    tol = GeodesicParams.INTERSECTION_TOL
    if not 0 < p.s < 1:
        raise PhaseSpaceError(f"edge fraction {p.s!r} outside (0, 1)")

    start, end = _edge_xy(model, p.edge)
    d = _sub(end, start)
    z = position_xy(model, p)
    u = p.direction
    u_norm = _norm(u)

    along = _cross(u, d)
    if (along == 0) if exact else abs(along) <= tol * u_norm * _norm(d):
        first, second = SurfaceParams.EDGES[p.edge]
        raise SingularityHitError(step, second if _dot(u, d) > 0 else first)
    if _dot(u, _inward_xy(model, p.edge)) <= 0:
        raise PhaseSpaceError(f"direction {u!r} points out of the polygon")

    best: tuple | None = None
    for edge in SurfaceParams.EDGES:
        if edge == p.edge:
            continue
        e_start, e_end = _edge_xy(model, edge)
        e = _sub(e_end, e_start)
        den = _cross(u, e)
        if den == 0 or (not exact and abs(den) <= tol * u_norm * _norm(e)):
            continue
        w = _sub(e_start, z)
        t = _cross(w, e) / den
        sigma = _cross(w, u) / den
        if exact:
            if t <= 0 or not 0 <= sigma <= 1:
                continue
        elif t * u_norm <= tol or not -tol <= sigma <= 1 + tol:
            continue
        if best is None or t < best[0]:
            best = (t, edge, sigma)

    if best is None:
        raise SingularityHitError(step, None)
    t, exit_edge, sigma = best
    exit_xy = (z[0] + t * u[0], z[1] + t * u[1])
    vertex, distance = _nearest_vertex(exit_xy, model)
    if distance < SurfaceParams.EPS_VERTEX:
        raise SingularityHitError(step, vertex)

    target, affine = model.transition(exit_edge)
    entry_xy = affine.apply_xy(*exit_xy)
    entry_u = affine.apply_vector_xy(*u)
    t_start, t_end = _edge_xy(model, target)
    t_d = _sub(t_end, t_start)
    entry_s = _dot(_sub(entry_xy, t_start), t_d) / _dot(t_d, t_d)
    return Crossing(exit_edge, sigma, u, t, PhasePoint(target, entry_s, entry_u))


def poincare_step(model: SurfaceModel, p: PhasePoint, step: int = 0) -> PhasePoint:
    """T(x, θ): the next entry point after one crossing and gluing."""
    return poincare_crossing(model, p, step).entry


def _safe_exp(x: float) -> float:
    if x > 709:
        return math.inf
    if x < -745:
        return 0.0
    return math.exp(x)


def trace_orbit(
    model: SurfaceModel,
    p: PhasePoint,
    steps: int,
    detect_trapped: bool = False,
    length_budget: float = math.inf,
) -> OrbitRecord:
    """
    Iterates the Poincaré map and records positions, speeds and lengths.

    Stops early once `cumulative_length` exceeds `length_budget`. With
    `detect_trapped`, a run of `GeodesicParams.TRAPPED_EXITS` consecutive
    exits through ]A,B[ ∪ ]A,D[ whose developed length stays within
    `GeodesicParams.TRAPPED_LENGTH_BOUND` ends the record as trapped.

    Float directions are renormalized to unit length after every gluing with
    the log speed scale carried separately; exact directions are kept as is.
    `cumulative_length` is the developed length for unit initial speed.
    """
    record = OrbitRecord(initial=p)
    exact = is_exact(p.direction[0]) and is_exact(p.direction[1])
    log_u0 = 0.5 * log_abs(_dot(p.direction, p.direction))
    if not exact:
        n0 = _norm(p.direction)
        p = PhasePoint(p.edge, p.s, (p.direction[0] / n0, p.direction[1] / n0))

    log_scale = 0.0
    cumulative = 0.0
    left_exits, run_start = 0, 0.0
    for k in range(1, steps + 1):
        try:
            crossing = poincare_crossing(model, p, k)
        except SingularityHitError:
            record.termination = Termination.SINGULARITY_HIT
            record.singular_step = k
            return record

        segment = float(crossing.time) * _norm(crossing.exit_direction)
        before = cumulative
        cumulative += segment * _safe_exp(-log_scale)
        entry = crossing.entry
        if exact:
            log_scale = 0.5 * log_abs(_dot(entry.direction, entry.direction)) - log_u0
        else:
            factor = _norm(entry.direction)
            log_scale += math.log(factor)
            ux, uy = entry.direction
            entry = PhasePoint(entry.edge, entry.s, (ux / factor, uy / factor))

        record.steps.append(
            OrbitStep(
                point=entry,
                exit_edge=crossing.exit_edge,
                segment_length=segment,
                speed_scale=_safe_exp(log_scale),
                log_speed_scale=log_scale,
                cumulative_length=cumulative,
            )
        )
        p = entry

        if crossing.exit_edge in LEFT_EDGES:
            if left_exits == 0:
                run_start = before
            left_exits += 1
        else:
            left_exits = 0
        run_length = cumulative - run_start
        if (
            detect_trapped
            and left_exits >= GeodesicParams.TRAPPED_EXITS
            and run_length <= GeodesicParams.TRAPPED_LENGTH_BOUND
        ):
            record.termination = Termination.TRAPPED_FINITE_TIME
            return record
        if cumulative > length_budget:
            return record
    return record


def first_return_ab(
    model: SurfaceModel,
    x: Scalar,
    theta: float | None = None,
    *,
    tan_theta: Scalar | None = None,
) -> tuple[Scalar, float]:
    """
    Three crossings from [A,B] back to [A,B].

    Give either the angle `theta` or, for exact tracing, `tan_theta`.
    """
    if tan_theta is not None:
        p = PhasePoint.from_slope("AB", x, tan_theta)
    elif theta is not None:
        p = PhasePoint.from_angle("AB", x, theta)
    else:
        raise ValueError("theta or tan_theta is required")
    for k in range(1, 4):
        p = poincare_step(model, p, k)
    if p.edge != "AB":
        raise NotApplicableError(f"third entry lands on {p.edge}, not AB")
    return p.s, p.theta


def t_theta_oracle(
    model: SurfaceModel,
    x: Scalar,
    theta: float | None = None,
    *,
    tan_theta: Scalar | None = None,
) -> Scalar:
    """Closed-form-free T_θ(x), obtained purely by ray tracing."""
    return first_return_ab(model, x, theta, tan_theta=tan_theta)[0]


@dataclass(frozen=True)
class RegularityResult:
    """Regular, or irregular with the reason."""

    regular: bool
    reason: Termination | None
    steps: int
    length: float


def classify_regularity(
    model: SurfaceModel,
    p: PhasePoint,
    step_budget: int = GeodesicParams.STEP_BUDGET,
    length_budget: float = GeodesicParams.LENGTH_BUDGET,
) -> RegularityResult:
    """
    Irregular when the geodesic hits a vertex or keeps leaving through
    ]A,B[ ∪ ]A,D[ (finite total length); regular once either budget is used.
    """
    record = trace_orbit(
        model, p, step_budget, detect_trapped=True, length_budget=length_budget
    )
    steps, length = len(record.steps), record.cumulative_length
    if record.termination is not Termination.BUDGET:
        return RegularityResult(False, record.termination, steps, length)
    return RegularityResult(True, None, steps, length)


@dataclass(frozen=True)
class ThreeCycleReport:
    """Successive AB returns and their contraction factors."""

    returns: list[Scalar]
    factors: list[float]
    limit: Scalar
    cycle_edges: tuple[str, ...]


def three_cycle_convergence(
    model: SurfaceModel,
    x0: Scalar,
    theta: float | None = None,
    *,
    tan_theta: Scalar | None = None,
    n_returns: int = 6,
) -> ThreeCycleReport:
    """
    For θ ≤ θ̃ the first-return map is one contracting branch: returns
    converge to its fixed point with factor 1/16 per return.
    """
    if tan_theta is not None:
        p = PhasePoint.from_slope("AB", x0, tan_theta)
    elif theta is not None:
        p = PhasePoint.from_angle("AB", x0, theta)
    else:
        raise ValueError("theta or tan_theta is required")

    record = trace_orbit(model, p, 3 * n_returns)
    if record.termination is not Termination.BUDGET:
        raise SingularityHitError(record.singular_step or 0, None)
    returns = [x0] + [record.steps[3 * k + 2].point.s for k in range(n_returns)]
    factors = []
    for k in range(1, len(returns) - 1):
        before = float(returns[k] - returns[k - 1])
        after = float(returns[k + 1] - returns[k])
        if before != 0:
            factors.append(after / before)
    edges = tuple(step.point.edge for step in record.steps[-3:])
    return ThreeCycleReport(returns, factors, returns[-1], edges)
