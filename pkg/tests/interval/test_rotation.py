from fractions import Fraction

import numpy as np
import pytest

from src.interval.gaiet import Branch, GaietMap, t_theta_from_tan
from src.interval.lift import lift
from src.interval.rotation import (
    IrrationalEstimate,
    PeriodicOrbit,
    circular_distance,
    detect_periodic_orbit,
    rotation_number_exact,
    translation_number,
    translation_number_grid,
    witness_residual,
)
from src.utils.errors import SingularOrbitError


@pytest.mark.parametrize(
    "tan, expected",
    [
        (Fraction(1, 4), Fraction(0)),
        (Fraction(9, 16), Fraction(1)),
        (Fraction(7, 10), Fraction(1, 2)),
        (Fraction(33, 34), Fraction(0)),
        (Fraction(1), Fraction(0)),
    ],
)
def test_special_translation_numbers(tan, expected):
    base = t_theta_from_tan(tan)
    result = rotation_number_exact(base)

    assert result.is_rational
    assert result.value == expected
    assert isinstance(result.witness, PeriodicOrbit)
    assert result.witness.exact
    assert witness_residual(base, result.witness) == 0


def test_half_plateau_witness_is_a_two_cycle():
    orbit = detect_periodic_orbit(t_theta_from_tan(Fraction(7, 10)))

    assert (orbit.p, orbit.q) == (1, 2)
    assert orbit.itinerary in {(0, 1), (1, 0)}


def test_orbit_on_breakpoint_needs_a_side():
    base = t_theta_from_tan(Fraction(7, 10))

    with pytest.raises(SingularOrbitError):
        detect_periodic_orbit(base, x0=Fraction(2, 5), transient=0)
    assert detect_periodic_orbit(base, x0=Fraction(2, 5), side="right") is not None


def test_breakpoint_orbit_follows_both_sides():
    base = t_theta_from_tan(Fraction(7, 10))
    result = rotation_number_exact(base, x0=Fraction(2, 5))

    assert result.sides is not None
    left, right = result.sides
    assert left.value == right.value == result.value == Fraction(1, 2)
    assert left.witness.exact and right.witness.exact
    assert rotation_number_exact(base).sides is None


def test_expanding_map_rejected():
    expanding = GaietMap((Branch(0.0, 1.0, 2.0, 0.0),))
    with pytest.raises(ValueError):
        rotation_number_exact(expanding)


def test_grid_matches_exact_values():
    tans = np.array([0.25, 0.5625, 0.7, 33 / 34, 1.0])
    estimates, bounds = translation_number_grid(tans, 20_000)

    assert np.allclose(estimates, [0, 1, 0.5, 0, 0], atol=2 * bounds[0])
    assert np.all(bounds == 1 / 20_000)


def test_grid_is_non_increasing():
    thetas = np.linspace(0.47, 0.78, 300)
    estimates, bounds = translation_number_grid(np.tan(thetas), 20_000)

    assert np.max(np.diff(estimates)) <= 2 * bounds[0]


def test_rotation_is_translation_mod_one():
    result = rotation_number_exact(t_theta_from_tan(Fraction(9, 16)))

    assert result.translation == 1.0
    assert result.rotation == 0.0
    assert not isinstance(result.value, IrrationalEstimate)


def test_circular_distance_wraps():
    assert circular_distance(0.95, 0.05) == pytest.approx(0.1)
    assert circular_distance(0.3, 0.3) == 0


def test_translation_number_of_exact_map_runs_in_floats():
    result = translation_number(lift(t_theta_from_tan(Fraction(7, 10))), 0.5, 1000)

    assert result.error_bound == pytest.approx(1e-3)
    assert abs(result.estimate - 0.5) <= 2 * result.error_bound
