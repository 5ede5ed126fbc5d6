from fractions import Fraction
import math

import pytest

from src.config.settings import GeodesicParams, IntervalParams
from src.geodesics.phase import PhasePoint, Termination
from src.geodesics.tracer import (
    classify_regularity,
    first_return_ab,
    poincare_crossing,
    poincare_step,
    position_xy,
    t_theta_oracle,
    three_cycle_convergence,
    trace_orbit,
)
from src.interval.gaiet import t_theta, t_theta_from_tan
from src.surface.model import build_model
from src.utils.errors import PhaseSpaceError, SingularityHitError


@pytest.fixture
def model():
    return build_model()


def test_position_on_ab(model):
    p = PhasePoint.from_slope("AB", Fraction(1, 4), Fraction(1, 2))

    assert position_xy(model, p) == (0, Fraction(-1, 4))


def test_exact_oracle_matches_closed_form(model):
    tan = Fraction(7, 10)
    closed = t_theta_from_tan(tan)

    for x in (Fraction(1, 5), Fraction(3, 5), Fraction(7, 8)):
        assert t_theta_oracle(model, x, tan_theta=tan) == closed(x)
    assert t_theta_oracle(model, Fraction(1, 5), tan_theta=tan) == Fraction(9, 10)
    assert t_theta_oracle(model, Fraction(3, 5), tan_theta=tan) == Fraction(1, 5)


@pytest.mark.parametrize("theta", [0.5, 0.6, 0.7, 0.78])
def test_float_oracle_matches_closed_form(model, theta):
    for x in (0.13, 0.5, 0.91):
        assert t_theta_oracle(model, x, theta) == pytest.approx(
            t_theta(theta)(x), abs=1e-9
        )


def test_direction_returns_after_three_crossings(model):
    _, theta = first_return_ab(model, 0.3, 0.65)

    assert theta == pytest.approx(0.65, abs=1e-12)


def test_exact_trace_returns_to_ab(model):
    start = PhasePoint.from_slope("AB", Fraction(1, 5), Fraction(7, 10))
    record = trace_orbit(model, start, 6)

    assert record.termination is Termination.BUDGET
    assert len(record.steps) == 6
    assert record.steps[2].point.edge == "AB"
    assert record.steps[2].point.s == Fraction(9, 10)
    assert record.cumulative_length > 0


def test_float_trace_keeps_unit_directions(model):
    record = trace_orbit(model, PhasePoint.from_angle("AB", 0.4, 0.6), 9)

    for step in record.steps:
        assert math.hypot(*step.point.direction) == pytest.approx(1.0)
        assert step.speed_scale == pytest.approx(math.exp(step.log_speed_scale))


def test_ray_through_vertex_is_singular(model):
    # s = 2·tanθ − 1 aims exactly at C.
    start = PhasePoint.from_slope("AB", Fraction(1, 2), Fraction(3, 4))
    record = trace_orbit(model, start, 5)

    assert record.termination is Termination.SINGULARITY_HIT
    assert record.singular_step == 1


def test_tangent_direction_is_singular(model):
    with pytest.raises(SingularityHitError):
        poincare_crossing(model, PhasePoint("AB", 0.5, (0.0, -1.0)))


def test_outward_direction_rejected(model):
    with pytest.raises(PhaseSpaceError):
        poincare_crossing(model, PhasePoint("AB", 0.5, (-1.0, 0.2)))


def test_three_cycle_contracts_by_one_sixteenth(model):
    theta = 0.5 * IntervalParams.THETA_TILDE
    report = three_cycle_convergence(model, 0.37, theta)

    assert all(f == pytest.approx(1 / 16, abs=1e-6) for f in report.factors)
    assert 0 < report.limit < 1


def test_regular_geodesic_uses_its_budget(model):
    result = classify_regularity(
        model,
        PhasePoint.from_angle("AB", 0.3, 0.7),
        step_budget=300,
        length_budget=math.inf,
    )

    assert result.regular
    assert result.reason is None
    assert result.steps == 300


def test_regular_geodesic_stops_at_the_length_budget(model):
    result = classify_regularity(
        model, PhasePoint.from_angle("AB", 0.3, 0.7), step_budget=300
    )

    assert result.regular
    assert result.length > GeodesicParams.LENGTH_BUDGET
    assert result.steps < 300


@pytest.fixture
def periodic_exits(model):
    """Exit crossings of 60 exact steps on the period-two orbit of tanθ = 7/10."""
    p = PhasePoint.from_slope("AB", Fraction(3, 10), Fraction(7, 10))
    crossings = []
    for k in range(1, 61):
        crossings.append(poincare_crossing(model, p, k))
        p = crossings[-1].entry
    return crossings


def test_reversed_orbit_is_trapped(model, periodic_exits):
    back = periodic_exits[-1].reversed_exit()
    result = classify_regularity(model, back)

    assert not result.regular
    assert result.reason is Termination.TRAPPED_FINITE_TIME
    assert result.steps == GeodesicParams.TRAPPED_EXITS
    assert result.length <= GeodesicParams.TRAPPED_LENGTH_BOUND


def test_trapped_needs_the_length_bound(model, periodic_exits, monkeypatch):
    monkeypatch.setattr(GeodesicParams, "TRAPPED_LENGTH_BOUND", 1e-3)
    back = periodic_exits[-1].reversed_exit()
    result = classify_regularity(model, back, step_budget=50)

    assert result.reason is not Termination.TRAPPED_FINITE_TIME


def test_speed_contracts_by_sixteen_per_return(model):
    start = PhasePoint.from_slope("AB", Fraction(3, 10), Fraction(7, 10))
    record = trace_orbit(model, start, 30)

    for k in range(1, 11):
        step = record.steps[3 * k - 1]
        assert step.point.edge == "AB"
        assert step.log_speed_scale == pytest.approx(-k * math.log(16), rel=1e-12)


def test_reversed_segment_retraces_to_entry(model):
    p = PhasePoint.from_slope("AB", Fraction(1, 4), Fraction(1, 2))
    back = poincare_crossing(model, p).reversed_exit()

    returned = poincare_crossing(model, back)
    assert returned.exit_edge == "AB"
    assert returned.exit_s == Fraction(1, 4)


def test_poincare_step_is_the_crossing_entry(model):
    p = PhasePoint.from_slope("AB", Fraction(1, 4), Fraction(1, 2))

    assert poincare_step(model, p) == poincare_crossing(model, p).entry
    assert poincare_step(model, p).edge == "AB"
