import math

import numpy as np
import pytest

from src.field.vector_field import (
    FieldParams,
    characteristic_line_distance,
    eval_field,
    exact_line_flow,
    p,
    projected_velocity,
)


@pytest.fixture
def params():
    return FieldParams.from_model()


def test_residues_from_the_surface(params):
    assert params.alpha0 == pytest.approx(complex(5 * math.pi / 4, math.log(2) / 2))
    assert params.total == pytest.approx(2 * math.pi)
    assert params.mu0.real == pytest.approx(5 / 8)


def test_coefficients_match_eval(params):
    c = params.coefficients()
    x, y = 0.3 - 0.2j, 1.1 + 0.4j
    v1, v2 = eval_field(params, x, y)

    assert v1 == pytest.approx(c["a"] * x * x + c["b"] * x * y)
    assert v2 == pytest.approx(c["c"] * x * y + c["d"] * y * y)


def test_characteristic_lines_are_invariant(params):
    assert eval_field(params, 0j, 2 + 1j)[0] == 0
    assert eval_field(params, 1 - 1j, 0j)[1] == 0
    v1, v2 = eval_field(params, 0.5 + 0.5j, 0.5 + 0.5j)
    assert v1 == pytest.approx(v2)


def test_projection_identity_pointwise(params):
    rng = np.random.default_rng(7)
    g1 = rng.normal(size=5) + 1j * rng.normal(size=5)
    g2 = rng.normal(size=5) + 1j * rng.normal(size=5)

    delta_prime = projected_velocity(params, g1, g2)
    assert np.allclose(delta_prime, -g2 * p(g1 / g2), rtol=1e-12)


def test_line_distance():
    assert characteristic_line_distance(0j, 1 + 0j) == 0
    assert characteristic_line_distance(1 + 0j, 1 + 0j) == 0
    assert characteristic_line_distance(0.5j, 1 + 0j) > 0


def test_exact_flows_solve_their_lines(params):
    t = np.array([0.0, 0.1, 0.2])
    g1, g2 = exact_line_flow(params, "L0", 1 + 0j, t)
    assert np.all(g1 == 0)
    assert g2[0] == 1
    x, y = exact_line_flow(params, "L1", 0.5 + 0j, t)
    assert np.allclose(x, y)
    x, y = exact_line_flow(params, "Linf", 0.5 + 0j, t)
    assert np.all(y == 0)
    with pytest.raises(ValueError):
        exact_line_flow(params, "L2", 1 + 0j, t)
