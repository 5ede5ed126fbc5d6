import math

import pytest

from src.field.limits import limit_circle
from src.field.vector_field import FieldParams
from src.utils.errors import RealNonzeroLError


@pytest.fixture
def params():
    return FieldParams.from_model()


@pytest.mark.parametrize("l_value", [1j, 2 - 3j, -0.5 + 0.1j])
def test_parameterization_lies_on_the_circle(params, l_value):
    circle = limit_circle(params, l_value)

    assert circle.kind == "circle"
    assert circle.distance(0j) == pytest.approx(0.0, abs=1e-12)
    for t in (-3.0, -0.2, 0.0, 0.7, 5.0):
        assert circle.distance(circle.point(t)) == pytest.approx(0.0, abs=1e-12)


def test_radius_for_imaginary_l(params):
    circle = limit_circle(params, 1j)

    assert circle.radius == pytest.approx(1 / (2 * abs(params.alpha0)))


def test_degenerate_values(params):
    assert limit_circle(params, 0).kind == "point"
    line = limit_circle(params, complex(math.inf, 0))
    assert line.kind == "line"
    assert line.distance(line.point(2.0)) == pytest.approx(0.0, abs=1e-12)
    assert line.point(math.inf) == 0


def test_real_nonzero_l_rejected(params):
    with pytest.raises(RealNonzeroLError):
        limit_circle(params, 2.0)
