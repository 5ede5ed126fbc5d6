"""
Run Configuration.
Parameters of one CLI invocation after merging flags, an optional key=value
config file and the defaults, validated before any computation starts.
"""

from fractions import Fraction
import math
from pathlib import Path
from typing import Any

from dotenv import dotenv_values
from pydantic import (
    BaseModel,
    ConfigDict,
    ValidationInfo,
    field_validator,
    model_validator,
)

from src.config.settings import (
    IntegratorParams,
    IntervalParams,
    RenormParams,
    RuntimeConfig,
)
from src.utils.scalars import Backend, Scalar, parse_scalar

SCALAR_FIELDS = ("tan_theta", "x0", "lam", "mu", "s")


class RunConfig(BaseModel):
    """
    Validated parameters shared by all subcommands.

    Unused fields keep their defaults; `backend` decides whether the scalar
    fields become floats or Fractions.
    """

    model_config = ConfigDict(
        arbitrary_types_allowed=True, extra="forbid", validate_default=True
    )

    backend: Backend = Backend.FLOAT
    threads: int = RuntimeConfig.THREADS
    seed: int = RuntimeConfig.SEED

    # Angles and interval maps
    theta_min: float = IntervalParams.THETA_TILDE
    theta_max: float = IntervalParams.THETA_MAX
    points: int = IntervalParams.SWEEP_POINTS
    iterations: int = IntervalParams.SWEEP_ITERS
    theta: float | None = None
    tan_theta: Scalar | None = None
    x0: Scalar | None = None
    steps: int = 20
    depth: int = RenormParams.CANTOR_DEPTH
    p: int = 1
    q: int = 2

    # Renormalization
    lam: Scalar = RenormParams.LAMBDA
    mu: Scalar = RenormParams.MU
    s: Scalar | None = None
    max_steps: int = RenormParams.MAX_STEPS

    # Field
    x0re: float = 0.5
    x0im: float = 0.6
    y0re: float = 1.0
    y0im: float = 0.0
    t_end: float = 1.0
    max_step: float | None = None
    tol: float = IntegratorParams.RTOL
    atol: float = IntegratorParams.ATOL

    out: str | None = None

    @field_validator("backend", mode="before")
    @classmethod
    def parse_backend(cls, v):
        """Accepts the backend name in any case."""
        return Backend(str(v).strip().lower()) if v is not None else Backend.FLOAT

    @field_validator(*SCALAR_FIELDS, mode="before")
    @classmethod
    def parse_rational(cls, v, info: ValidationInfo):
        """Parses "p/q", decimals and ints into the selected backend."""
        if v is None or v == "":
            return None
        backend = info.data.get("backend", Backend.FLOAT)
        if backend is Backend.RATIONAL and isinstance(v, float):
            raise ValueError(
                f"{info.field_name}={v!r}: the rational backend needs p/q input"
            )
        return parse_scalar(v, backend)

    @model_validator(mode="after")
    def check_ranges(self) -> "RunConfig":
        """Ranges non-empty and inside the domain, budgets and tolerances positive."""
        if not 0 <= self.theta_min < self.theta_max <= math.pi / 4 + 1e-15:
            raise ValueError(
                f"θ range [{self.theta_min}, {self.theta_max}] must be a non-empty "
                "sub-interval of [0, π/4]"
            )
        if self.theta is not None and not 0 <= self.theta <= math.pi / 4 + 1e-15:
            raise ValueError(f"theta={self.theta} outside [0, π/4]")
        if self.tan_theta is not None and not 0 <= self.tan_theta <= 1:
            raise ValueError(f"tan_theta={self.tan_theta} outside [0, 1]")
        if self.x0 is not None and not 0 <= self.x0 <= 1:
            raise ValueError(f"x0={self.x0} outside [0, 1]")
        if self.s is not None and not 0 < self.s < 1:
            raise ValueError(f"s={self.s} outside (0, 1)")
        if not (0 < self.lam <= Fraction(1, 2) and 0 < self.mu <= Fraction(1, 2)):
            raise ValueError("lam and mu must lie in (0, 1/2]")
        for name in ("tol", "atol", "t_end", "max_step"):
            if getattr(self, name) is not None and getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("threads", "points", "iterations", "steps", "max_steps", "q"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be ≥ 1")
        if self.depth < 0:
            raise ValueError("depth must be ≥ 0")
        return self


def read_config_file(path: Path | str) -> dict[str, str]:
    """key=value lines; keys are normalized to field names (lower, '-' → '_')."""
    if not Path(path).is_file():
        raise FileNotFoundError(f"config file not found: {path}")
    raw = dotenv_values(path)
    return {
        key.strip().lower().replace("-", "_"): value
        for key, value in raw.items()
        if value is not None
    }


def load_run_config(
    flags: dict[str, Any], config_file: Path | str | None = None
) -> RunConfig:
    """
    Merges flags > config file > defaults and validates the result.

    Raises:
        pydantic.ValidationError: Any parameter is invalid.
    """
    merged: dict[str, Any] = {}
    if config_file is not None:
        merged.update(read_config_file(config_file))
    merged.update({k: v for k, v in flags.items() if v is not None})
    return RunConfig(**merged)
