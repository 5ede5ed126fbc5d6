import math

import pytest

from src.surface.model import build_model, glue, validate
from src.utils.errors import InconsistentModelError, PhaseSpaceError, VertexHitError


@pytest.fixture
def model():
    return build_model()


def test_cone_angles_sum_to_two_pi(model):
    total = sum(c.alpha for c in model.cone_data.values())

    assert total.real == pytest.approx(2 * math.pi)
    assert total.imag == pytest.approx(0.0, abs=1e-15)


def test_validate_reports_consistent(model):
    report = validate(model)

    assert report.consistent
    assert report.values["edge_c"] == pytest.approx(2.0)
    assert report.values["mu_0_re"] == pytest.approx(5 / 8)
    assert all(d < 1e-12 for d in report.deviations.values())
    assert report.to_lines()[0] == "consistent=true"


def test_validate_detects_tampered_cone_data(model):
    cone = dict(model.cone_data)
    cone["1"] = type(cone["1"])(math.pi / 3, cone["1"].ratio_log)
    broken = type(model)(model.vertices, model.gluings, cone)

    with pytest.raises(InconsistentModelError) as err:
        validate(broken)
    assert err.value.field == "theta_1"


def test_gluings_fix_their_vertices(model):
    g1, g2 = (g.affine for g in model.gluings)

    assert g1(-1j) == pytest.approx(-1j)
    assert g1(0j) == pytest.approx(2 + 1j)
    assert g2(1j) == pytest.approx(1j)
    assert g2(2 + 1j) == pytest.approx(0j, abs=1e-15)


def test_interior_angles(model):
    assert model.interior_angle("B") == pytest.approx(math.pi / 4)
    assert model.interior_angle("D") == pytest.approx(math.pi / 2)
    assert model.interior_angle("A") + model.interior_angle("C") == pytest.approx(
        5 * math.pi / 4
    )


def test_glue_moves_point_to_partner_edge(model):
    target, point, direction = glue(model, "AB", -0.5j, 1 + 0j)

    assert target == "BC"
    assert model.edge_fraction("BC", point) == pytest.approx(0.5)
    assert abs(direction) == pytest.approx(2 * math.sqrt(2))


def test_glue_rejects_vertex_and_off_edge_points(model):
    with pytest.raises(VertexHitError):
        glue(model, "AB", -1j, 1 + 0j)
    with pytest.raises(PhaseSpaceError):
        glue(model, "AB", 0.3 - 0.5j, 1 + 0j)


def test_inward_normals_point_into_the_quadrilateral(model):
    assert model.inward_normal("AB") == 1
    assert model.inward_normal("AD") == 1
    assert abs(model.inward_normal("BC")) == pytest.approx(1.0)
