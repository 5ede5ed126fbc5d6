import numpy as np
import pytest

from src.config.settings import IntegratorParams
from src.field.integrator import Termination, integrate, integrate_many
from src.field.vector_field import FieldParams, exact_line_flow
from src.utils.errors import StiffnessFailureError


@pytest.fixture
def params():
    return FieldParams.from_model()


def test_l0_matches_the_exact_flow(params):
    traj = integrate(params, (0j, 1 + 0j), 1.0)
    _, exact = exact_line_flow(params, "L0", 1 + 0j, traj.t)

    assert traj.termination is Termination.TIME_LIMIT
    assert traj.t[-1] == pytest.approx(1.0)
    assert np.max(np.abs(traj.gamma2 - exact) / np.abs(exact)) < 1e-8
    assert np.all(traj.gamma1 == 0)


def test_linf_matches_the_exact_flow(params):
    traj = integrate(params, (0.5 + 0j, 0j), 0.5)
    exact, _ = exact_line_flow(params, "Linf", 0.5 + 0j, traj.t)

    assert np.max(np.abs(traj.gamma1 - exact) / np.abs(exact)) < 1e-8


def test_blow_up_is_detected_and_timed(params):
    # y(t) = 1/(1/y0 + α0·t) blows up at t = 1 for y0 = −1/α0.
    y0 = -1 / params.alpha0
    traj = integrate(params, (0j, y0), 2.0)

    assert traj.termination is Termination.BLOW_UP
    assert traj.blowup_time == pytest.approx(1.0, abs=1e-6)


def test_max_step_bounds_sample_spacing(params):
    traj = integrate(params, (0.5 + 0.6j, 1 + 0j), 0.05, max_step=1e-3)

    assert np.max(np.diff(traj.t)) <= 1e-3 + 1e-15
    assert len(traj) >= 50


def test_frame_columns(params):
    df = integrate(params, (0.5 + 0.6j, 1 + 0j), 0.01).to_frame()

    assert list(df.columns) == [
        "t", "g1re", "g1im", "g2re", "g2im", "dre", "dim", "err"
    ]
    assert df["dre"].iloc[0] == pytest.approx(0.5)
    assert df["dim"].iloc[0] == pytest.approx(0.6)


def test_zero_start_rejected(params):
    with pytest.raises(ValueError):
        integrate(params, (0j, 0j), 1.0)


def test_step_budget(params, monkeypatch):
    monkeypatch.setattr(IntegratorParams, "MAX_STEPS", 3)

    with pytest.raises(StiffnessFailureError):
        integrate(params, (0.5 + 0.6j, 1 + 0j), 1.0, max_step=1e-4)


def test_many_in_input_order(params):
    starts = [(0.5 + 0.6j, 1 + 0j), (0j, 1 + 0j)]
    single = [integrate(params, s, 0.02) for s in starts]
    many = integrate_many(params, starts, 0.02, threads=2)

    for a, b in zip(single, many, strict=True):
        np.testing.assert_array_equal(a.gamma2, b.gamma2)


def test_large_start_that_decays_is_not_a_blow_up(params):
    # 1/γ₂ = α0(1e-10 + t): ‖γ‖ starts above BLOWUP_NORM and only falls.
    y0 = 1e10 / params.alpha0
    traj = integrate(params, (0j, y0), 1e-3)

    assert traj.norms[0] > IntegratorParams.BLOWUP_NORM
    assert traj.termination is Termination.TIME_LIMIT
    assert traj.blowup_time is None
    assert traj.gamma2[-1] == pytest.approx(
        1 / (params.alpha0 * (1e-3 + 1e-10)), rel=1e-6
    )


def test_quadratic_field_rescales_time(params):
    # v(cγ) = c²v(γ), so cγ(ct) solves the same field.
    gamma0 = (0.5 + 0.6j, 1 + 0j)
    base = integrate(params, gamma0, 0.05)
    scaled = integrate(params, (2 * gamma0[0], 2 * gamma0[1]), 0.025)

    assert scaled.t[-1] == pytest.approx(0.025)
    assert scaled.gamma1[-1] == pytest.approx(2 * base.gamma1[-1], rel=1e-8)
    assert scaled.gamma2[-1] == pytest.approx(2 * base.gamma2[-1], rel=1e-8)
