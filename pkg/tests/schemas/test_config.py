from fractions import Fraction

from pydantic import ValidationError
import pytest

from src.config.settings import RenormParams
from src.schemas.config import RunConfig, load_run_config, read_config_file
from src.utils.scalars import Backend


def test_defaults():
    cfg = RunConfig()

    assert cfg.backend is Backend.FLOAT
    assert cfg.lam == 1 / 16
    assert isinstance(cfg.lam, float)
    assert cfg.x0 is None


def test_rational_backend_parses_fractions():
    cfg = RunConfig(backend="RATIONAL", tan_theta="7/10", x0="0.5")

    assert cfg.tan_theta == Fraction(7, 10)
    assert cfg.x0 == Fraction(1, 2)
    assert cfg.lam == Fraction(1, 16)


def test_rational_backend_rejects_float_input():
    with pytest.raises(ValidationError):
        RunConfig(backend="rational", tan_theta=0.7)


@pytest.mark.parametrize(
    "fields",
    [
        {"theta_min": 0.7, "theta_max": 0.6},
        {"theta_max": 1.0},
        {"tan_theta": "3/2"},
        {"x0": "-0.1"},
        {"s": "1"},
        {"lam": "3/4"},
        {"tol": 0},
        {"points": 0},
        {"depth": -1},
        {"unknown": 1},
    ],
)
def test_invalid_values_rejected(fields):
    with pytest.raises(ValidationError):
        RunConfig(**fields)


def test_flags_override_config_file(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text("threads=3\nbackend=rational\nDEPTH=5\n", encoding="utf-8")

    cfg = load_run_config({"threads": 1, "depth": None}, path)

    assert cfg.threads == 1
    assert cfg.depth == 5
    assert cfg.backend is Backend.RATIONAL
    assert "depth" in cfg.model_fields_set


def test_config_file_keys_normalized(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text("tan-theta=7/10\n", encoding="utf-8")

    assert read_config_file(path) == {"tan_theta": "7/10"}


def test_missing_config_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_config_file(tmp_path / "absent.conf")


def test_model_factors_come_from_settings():
    exact = RunConfig(backend="rational")

    assert exact.lam == exact.mu == RenormParams.LAMBDA == Fraction(1, 16)
    assert RunConfig().mu == float(RenormParams.MU)
    assert RenormParams.ETA_BOUNDS == (Fraction(1, 2), Fraction(2))
