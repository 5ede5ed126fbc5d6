from fractions import Fraction

import numpy as np
import pytest

from pipelines.commands import (
    emit,
    field_integrate_frame,
    frame_to_csv,
    geodesic_trace_frame,
    limits_lambda,
    renorm_cantor_frame,
    renorm_run,
    rot_sweep_frame,
    surface_validate,
    sweep_angles,
)
from src.schemas.config import RunConfig


def _pairs(text: str) -> dict[str, str]:
    return dict(line.split("=", 1) for line in text.splitlines())


def test_sweep_angles_are_cell_midpoints():
    np.testing.assert_allclose(sweep_angles(0.0, 1.0, 4), [0.125, 0.375, 0.625, 0.875])


def test_surface_validate_consistent():
    assert surface_validate(RunConfig()).consistent


def test_geodesic_trace_frame_exact():
    cfg = RunConfig(backend="rational", tan_theta="7/10", steps=3)
    df = geodesic_trace_frame(cfg)

    assert list(df.columns[:5]) == ["step", "edge", "s", "theta", "speed_scale"]
    assert df["step"].tolist() == list(range(1, len(df) + 1))
    assert len(df) <= 3


def test_geodesic_trace_needs_direction():
    with pytest.raises(ValueError, match="tan-theta"):
        geodesic_trace_frame(RunConfig())


def test_rot_sweep_frame_columns_and_order():
    cfg = RunConfig(points=8, iterations=500)
    df = rot_sweep_frame(cfg)

    assert list(df.columns) == [
        "theta",
        "tan_theta",
        "transl_estimate",
        "error_bound",
        "exact_pq_if_found",
    ]
    assert len(df) == 8
    assert df["theta"].is_monotonic_increasing
    assert (df["error_bound"] == 1 / 500).all()


def test_rot_sweep_independent_of_threads():
    cfg = RunConfig(points=6, iterations=300)
    serial = frame_to_csv(rot_sweep_frame(cfg))
    parallel = frame_to_csv(rot_sweep_frame(cfg.model_copy(update={"threads": 2})))

    assert serial == parallel


def test_limits_lambda_inside_plateau():
    cfg = RunConfig(backend="rational", tan_theta="7/10")
    pairs = _pairs(limits_lambda(cfg))

    assert pairs["lambda"] == "{0}"
    assert pairs["depth"] == "60"
    assert pairs["x0"] == "1/2"


def test_limits_lambda_needs_angle():
    with pytest.raises(ValueError):
        limits_lambda(RunConfig())


def test_renorm_run_default_parameter():
    pairs = _pairs(renorm_run(RunConfig(backend="rational")))

    assert pairs["status"] == "stopped"
    assert "period_two" in pairs
    assert len(pairs["matrix"].split()) == 4


def test_renorm_cantor_frame_counts():
    df = renorm_cantor_frame(RunConfig(backend="rational", depth=3))

    assert df["count"].tolist() == [2, 4, 8, 16]
    assert df["window_slope"].isna().any()


def test_field_integrate_frame():
    df = field_integrate_frame(RunConfig(t_end=0.05))

    assert df["t"].iloc[0] == 0.0
    assert df["t"].iloc[-1] == pytest.approx(0.05)


def test_emit_to_stdout_and_file(tmp_path, capsys):
    emit("a=1\n", None)
    emit("b=2\n", "-")
    assert capsys.readouterr().out == "a=1\nb=2\n"

    target = tmp_path / "nested" / "out.txt"
    emit("c=3\n", str(target))
    assert target.read_text(encoding="utf-8") == "c=3\n"


def test_frame_to_csv_full_precision():
    df = rot_sweep_frame(RunConfig(points=2, iterations=100))
    header, first = frame_to_csv(df).splitlines()[:2]

    assert header.startswith("theta,tan_theta")
    assert float(first.split(",")[0]) == df["theta"].iloc[0]
    assert Fraction(1, 100) == Fraction(first.split(",")[3])
