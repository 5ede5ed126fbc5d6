"""
Adaptive Runge-Kutta-Fehlberg Integration.
Trajectories of the quadratic field are integrated as a real 4-vector
(Re γ₁, Im γ₁, Re γ₂, Im γ₂) with the embedded 4(5) pair. Finite-time
blow-up is recognized and its time extrapolated from 1/‖γ‖.
"""

from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum
from functools import partial
import math

import numpy as np
import pandas as pd

from src.config.settings import IntegratorParams
from src.field.vector_field import (
    FieldParams,
    characteristic_line_distance,
    eval_field,
    projected_velocity,
)
from src.utils.errors import StiffnessFailureError
from src.utils.logger import log
from src.utils.parallel import run_parallel

# Fehlberg tableau.
NODES = (0.0, 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2)
A = (
    (),
    (1 / 4,),
    (3 / 32, 9 / 32),
    (1932 / 2197, -7200 / 2197, 7296 / 2197),
    (439 / 216, -8.0, 3680 / 513, -845 / 4104),
    (-8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40),
)
B5 = np.array([16 / 135, 0.0, 6656 / 12825, 28561 / 56430, -9 / 50, 2 / 55])
# Fifth minus fourth order weights.
TR = np.array([1 / 360, 0.0, -128 / 4275, -2197 / 75240, 1 / 50, 2 / 55])


class Termination(StrEnum):
    TIME_LIMIT = "time_limit"
    BLOW_UP = "blow_up"
    NEAR_SINGULAR_LINE = "near_singular_line"
    MINIMA_REACHED = "minima_reached"


@dataclass(frozen=True)
class Trajectory:
    """Accepted samples of γ = (γ₁, γ₂) and how the run ended."""

    t: np.ndarray
    gamma1: np.ndarray
    gamma2: np.ndarray
    step_error: np.ndarray
    termination: Termination
    params: FieldParams
    blowup_time: float | None = None

    @property
    def delta(self) -> np.ndarray:
        return self.gamma1 / self.gamma2

    @property
    def delta_prime(self) -> np.ndarray:
        return projected_velocity(self.params, self.gamma1, self.gamma2)

    @property
    def norms(self) -> np.ndarray:
        return np.hypot(np.abs(self.gamma1), np.abs(self.gamma2))

    def __len__(self) -> int:
        return len(self.t)

    def to_frame(self) -> pd.DataFrame:
        """Columns t, g1re, g1im, g2re, g2im, dre, dim, err."""
        with np.errstate(divide="ignore", invalid="ignore"):
            delta = self.delta
        return pd.DataFrame(
            {
                "t": self.t,
                "g1re": self.gamma1.real,
                "g1im": self.gamma1.imag,
                "g2re": self.gamma2.real,
                "g2im": self.gamma2.imag,
                "dre": delta.real,
                "dim": delta.imag,
                "err": self.step_error,
            }
        )


def _rhs(params: FieldParams, y: np.ndarray) -> np.ndarray:
    v1, v2 = eval_field(params, complex(y[0], y[1]), complex(y[2], y[3]))
    return np.array([v1.real, v1.imag, v2.real, v2.imag])


def _scaled_rhs(params: FieldParams, y: np.ndarray) -> np.ndarray:
    """d(u, ρ)/dτ for γ = e^ρ·u, ‖u‖ = 1 and dτ = ‖γ‖dt."""
    u = y[:4]
    f = _rhs(params, u)
    radial = float(u @ f)
    return np.append(f - radial * u, radial)


def _rkf45_step(
    rhs: Callable[[np.ndarray], np.ndarray], y: np.ndarray, h: float
) -> tuple[np.ndarray, np.ndarray]:
    """Fifth-order update and the embedded error estimate."""
    k = np.empty((6, len(y)))
    for i, row in enumerate(A):
        stage = y + h * sum(a * k[j] for j, a in enumerate(row)) if row else y
        k[i] = rhs(stage)
    return y + h * (B5 @ k), h * (TR @ k)


def _error_norm(err: np.ndarray, y: np.ndarray, y_new: np.ndarray, atol, rtol):
    scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
    return float(np.max(np.abs(err) / scale))


def _extrapolate_blowup(t: list[float], norms: list[float]) -> float:
    """Zero of 1/‖γ‖, linear through the last two samples."""
    (t0, t1), (n0, n1) = t[-2:], norms[-2:]
    r0, r1 = 1 / n0, 1 / n1
    if r0 == r1:
        return t1
    return t1 + r1 * (t1 - t0) / (r0 - r1)


def integrate(
    params: FieldParams,
    gamma0: tuple[complex, complex],
    t_end: float,
    rtol: float = IntegratorParams.RTOL,
    atol: float = IntegratorParams.ATOL,
    max_step: float | None = None,
    h_init: float = IntegratorParams.H_INIT,
) -> Trajectory:
    """
    Integrates γ′ = v(γ) from t = 0 to `t_end`.

    The run ends in a blow-up once ‖γ‖ exceeds `IntegratorParams.BLOWUP_NORM`
    and the step has collapsed below `H_MIN_FACTOR` relative to t.

    Args:
        params: Field coefficients.
        gamma0: Initial (γ₁, γ₂), not both zero.
        t_end: Final time.
        rtol: Relative tolerance per step.
        atol: Absolute tolerance per step.
        max_step: Upper bound on the step, to keep samples dense.
        h_init: First trial step.

    Raises:
        StiffnessFailureError: The step underflowed while ‖γ‖ stayed
            moderate, or the step budget ran out.
    """
    g1, g2 = complex(gamma0[0]), complex(gamma0[1])
    if g1 == 0 and g2 == 0:
        raise ValueError("γ₀ must be nonzero")
    y = np.array([g1.real, g1.imag, g2.real, g2.imag])
    watch_lines = characteristic_line_distance(g1, g2) > IntegratorParams.LINE_DISTANCE
    rhs = partial(_rhs, params)

    t, h = 0.0, h_init
    ts, states, errors, norms = [t], [y], [0.0], [float(np.linalg.norm(y))]
    termination = Termination.TIME_LIMIT
    blowup_time = None

    while t_end - t > IntegratorParams.H_MIN_FACTOR * max(1.0, abs(t)):
        if len(ts) > IntegratorParams.MAX_STEPS:
            raise StiffnessFailureError(t, h)
        h = min(h, t_end - t)
        if max_step is not None:
            h = min(h, max_step)

        y_new, err = _rkf45_step(rhs, y, h)
        err_norm = _error_norm(err, y, y_new, atol, rtol)
        accepted = err_norm <= 1.0 and bool(np.all(np.isfinite(y_new)))
        if accepted:
            t, y = t + h, y_new
            ts.append(t)
            states.append(y)
            errors.append(err_norm)
            norms.append(float(np.linalg.norm(y)))

            if watch_lines:
                distance = characteristic_line_distance(
                    complex(y[0], y[1]), complex(y[2], y[3])
                )
                if distance < IntegratorParams.LINE_DISTANCE:
                    termination = Termination.NEAR_SINGULAR_LINE
                    break

        if err_norm == 0:
            factor = IntegratorParams.MAX_FACTOR
        elif not math.isfinite(err_norm):
            factor = IntegratorParams.MIN_FACTOR
        else:
            factor = IntegratorParams.SAFETY * err_norm**-0.2
        h *= min(max(IntegratorParams.MIN_FACTOR, factor), IntegratorParams.MAX_FACTOR)

        collapsed = h < IntegratorParams.H_MIN_FACTOR * max(1.0, abs(t))
        if collapsed and norms[-1] > IntegratorParams.BLOWUP_NORM:
            termination = Termination.BLOW_UP
            blowup_time = _extrapolate_blowup(ts, norms)
            break
        if collapsed and not accepted:
            raise StiffnessFailureError(t, h)

    if termination is Termination.BLOW_UP:
        log.info(f"💥 Blow-up near t*={blowup_time:.17g}")

    states_arr = np.array(states)
    return Trajectory(
        t=np.array(ts),
        gamma1=states_arr[:, 0] + 1j * states_arr[:, 1],
        gamma2=states_arr[:, 2] + 1j * states_arr[:, 3],
        step_error=np.array(errors),
        termination=termination,
        params=params,
        blowup_time=blowup_time,
    )


@dataclass(frozen=True)
class ScaledTrajectory:
    """
    Samples of γ = e^ρ·u with ‖u‖ = 1 against τ, where dτ = ‖γ‖dt.

    The orbit is the one of `integrate`; only the clock changes. ρ stays
    representable long after ‖γ‖ has fallen below any absolute tolerance.
    """

    tau: np.ndarray
    u1: np.ndarray
    u2: np.ndarray
    log_norm: np.ndarray
    termination: Termination
    params: FieldParams

    @property
    def delta(self) -> np.ndarray:
        return self.u1 / self.u2

    @property
    def log_abs_gamma2(self) -> np.ndarray:
        return self.log_norm + np.log(np.abs(self.u2))

    def __len__(self) -> int:
        return len(self.tau)


def _log_abs_gamma2(y: np.ndarray) -> float:
    size = math.hypot(y[2], y[3])
    return y[4] + math.log(size) if size > 0 else -math.inf


def _is_minimum(values: list[float]) -> bool:
    """Whether the middle of the last three values is a local minimum."""
    return len(values) >= 3 and values[-2] < values[-3] and values[-2] <= values[-1]


def integrate_scaled(
    params: FieldParams,
    gamma0: tuple[complex, complex],
    minima: int,
    tau_max: float = IntegratorParams.SCALED_TAU_MAX,
    rtol: float = IntegratorParams.RTOL,
    atol: float = IntegratorParams.ATOL,
    h_init: float = IntegratorParams.H_INIT,
) -> ScaledTrajectory:
    """
    Follows the direction and log-norm of γ until |γ₂| has passed `minima`
    local minima or τ reaches `tau_max`.

    Raises:
        StiffnessFailureError: The step underflowed or the step budget ran out.
    """
    g1, g2 = complex(gamma0[0]), complex(gamma0[1])
    if g1 == 0 and g2 == 0:
        raise ValueError("γ₀ must be nonzero")
    y = np.array([g1.real, g1.imag, g2.real, g2.imag, 0.0])
    radius = float(np.linalg.norm(y[:4]))
    y[:4] /= radius
    y[4] = math.log(radius)
    rhs = partial(_scaled_rhs, params)

    tau, h = 0.0, h_init
    taus, states = [tau], [y]
    levels = [_log_abs_gamma2(y)]
    found = 0
    termination = Termination.TIME_LIMIT

    while tau < tau_max:
        if len(taus) > IntegratorParams.MAX_STEPS:
            raise StiffnessFailureError(tau, h)
        h = min(h, tau_max - tau)
        y_new, err = _rkf45_step(rhs, y, h)
        err_norm = _error_norm(err, y, y_new, atol, rtol)
        accepted = err_norm <= 1.0 and bool(np.all(np.isfinite(y_new)))
        if accepted:
            # Back onto the unit sphere; γ itself is unchanged.
            size = float(np.linalg.norm(y_new[:4]))
            y_new[:4] /= size
            y_new[4] += math.log(size)
            tau, y = tau + h, y_new
            taus.append(tau)
            states.append(y)
            levels.append(_log_abs_gamma2(y))

            if y[4] > math.log(IntegratorParams.BLOWUP_NORM):
                termination = Termination.BLOW_UP
                break
            found += _is_minimum(levels)
            if found >= minima:
                termination = Termination.MINIMA_REACHED
                break

        if err_norm == 0:
            factor = IntegratorParams.MAX_FACTOR
        elif not math.isfinite(err_norm):
            factor = IntegratorParams.MIN_FACTOR
        else:
            factor = IntegratorParams.SAFETY * err_norm**-0.2
        h *= min(max(IntegratorParams.MIN_FACTOR, factor), IntegratorParams.MAX_FACTOR)
        if not accepted and h < IntegratorParams.H_MIN_FACTOR * max(1.0, tau):
            raise StiffnessFailureError(tau, h)

    states_arr = np.array(states)
    log.info(f"📊 Scaled run: {found} minima of |γ₂| by τ={tau:.6g}")
    return ScaledTrajectory(
        tau=np.array(taus),
        u1=states_arr[:, 0] + 1j * states_arr[:, 1],
        u2=states_arr[:, 2] + 1j * states_arr[:, 3],
        log_norm=states_arr[:, 4],
        termination=termination,
        params=params,
    )


def integrate_many(
    params: FieldParams,
    starts: list[tuple[complex, complex]],
    t_end: float,
    threads: int = 1,
    **kwargs,
) -> list[Trajectory]:
    """Independent trajectories from several starts, in input order."""
    job = partial(integrate, params, t_end=t_end, **kwargs)
    return run_parallel(job, starts, threads=threads)
