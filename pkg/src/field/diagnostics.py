"""
Trajectory Diagnostics.
Cross-checks between integrated trajectories and the surface: the projection
identity δ′ = −γ₂p(δ), straightness of δ(t) in the developing chart
z ↦ ∫ z^(μ₀−1)(z−1)^(μ₁−1) dz, winding around the singular points and
decay of ‖γ‖ at the returns.
"""

from dataclasses import dataclass, replace
import math
from typing import Literal

import numpy as np

from src.config.settings import IntegratorParams
from src.field.integrator import Termination, Trajectory, integrate_scaled
from src.field.vector_field import FieldParams, p
from src.utils.errors import (
    BranchAmbiguityError,
    NotApplicableError,
    TooCloseToSingularityError,
)


def singular_distance(z: np.ndarray) -> float:
    """Distance of the samples to {0, 1, ∞} (∞ measured through 1/z)."""
    with np.errstate(divide="ignore"):
        inverse = np.abs(1 / z)
    return float(min(np.min(np.abs(z)), np.min(np.abs(z - 1)), np.min(inverse)))


def projection_identity_residual(
    traj: Trajectory,
    method: Literal["analytic", "gradient"] = "analytic",
    min_distance: float = IntegratorParams.SINGULAR_DISTANCE,
) -> float:
    """
    max |δ′ + γ₂p(δ)| / max(|δ′|, ε) over the samples.

    With `method="analytic"` δ′ is evaluated from the field; with
    `"gradient"` it is differentiated numerically from the δ samples, which
    measures the integration error instead of rounding.

    Raises:
        NotApplicableError: The trajectory lies on L₀ (δ ≡ 0).
        TooCloseToSingularityError: δ comes closer than `min_distance` to
            0, 1 or ∞.
    """
    delta = traj.delta
    if np.all(traj.gamma1 == 0):
        raise NotApplicableError("δ ≡ 0 on L₀: the identity degenerates")
    distance = singular_distance(delta)
    if distance < min_distance:
        raise TooCloseToSingularityError(distance)

    if method == "analytic":
        delta_prime = traj.delta_prime
    else:
        delta_prime = np.gradient(delta, traj.t, edge_order=2)
    scale = np.maximum(np.abs(delta_prime), np.finfo(float).eps)
    residual = np.abs(delta_prime + traj.gamma2 * p(delta)) / scale
    return float(np.max(residual))


def _continuous_log(z: np.ndarray) -> np.ndarray:
    return np.log(np.abs(z)) + 1j * np.unwrap(np.angle(z))


def developing_form(params: FieldParams, z: np.ndarray) -> np.ndarray:
    """z^(μ₀−1)(z−1)^(μ₁−1) continued along the ordered samples `z`."""
    log_z, log_z1 = _continuous_log(z), _continuous_log(z - 1)
    return np.exp((params.mu0 - 1) * log_z + (params.mu1 - 1) * log_z1)


def developing_map(
    params: FieldParams,
    points: np.ndarray,
    max_spacing: float = IntegratorParams.BRANCH_MAX_SPACING,
) -> np.ndarray:
    """
    Cumulative integral of the developing form along a polyline, starting at 0.

    Each segment uses the endpoint-corrected trapezoid
    dz/2·(g_a + g_b) + dz²/12·(g′_a − g′_b), with g′/g = (μ₀−1)/z + (μ₁−1)/(z−1).

    Raises:
        BranchAmbiguityError: Consecutive points further apart than
            `max_spacing`, so the branch cannot be continued reliably.
    """
    z = np.asarray(points, dtype=complex)
    dz = np.diff(z)
    if len(dz) and np.max(np.abs(dz)) > max_spacing:
        raise BranchAmbiguityError(
            f"sample spacing {np.max(np.abs(dz)):.3e} exceeds {max_spacing}"
        )
    g = developing_form(params, z)
    dg = g * ((params.mu0 - 1) / z + (params.mu1 - 1) / (z - 1))
    segments = dz / 2 * (g[:-1] + g[1:]) + dz**2 / 12 * (dg[:-1] - dg[1:])
    return np.concatenate([[0j], np.cumsum(segments)])


def collinearity_residual(points: np.ndarray) -> float:
    """Max distance to the least-squares line, divided by the extent along it."""
    xy = np.column_stack([points.real, points.imag])
    centered = xy - xy.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    along, across = centered @ vt[0], centered @ vt[1]
    extent = np.ptp(along)
    if extent == 0:
        return 0.0
    return float(np.max(np.abs(across)) / extent)


def developing_straightness(
    traj: Trajectory,
    min_distance: float = IntegratorParams.BRANCH_DISTANCE,
    max_modulus: float = IntegratorParams.BRANCH_MAX_MODULUS,
) -> float:
    """
    Collinearity residual of the developed δ-path.

    Raises:
        BranchAmbiguityError: The path comes within `min_distance` of 0 or 1,
            leaves the disc of radius `max_modulus`, or is sampled too coarsely.
    """
    delta = traj.delta
    near = float(min(np.min(np.abs(delta)), np.min(np.abs(delta - 1))))
    if near < min_distance:
        raise BranchAmbiguityError(f"path within {near:.3e} of a singular point")
    if np.max(np.abs(delta)) > max_modulus:
        raise BranchAmbiguityError("path too close to ∞")
    return collinearity_residual(developing_map(traj.params, delta))


def phase_perturbed(traj: Trajectory, amplitude: float = 0.3) -> Trajectory:
    """Same samples with γ₂ rotated by e^(i·a·sin(2πt/T)); not a trajectory."""
    span = traj.t[-1] - traj.t[0]
    phase = amplitude * np.sin(2 * math.pi * (traj.t - traj.t[0]) / span)
    return replace(traj, gamma2=traj.gamma2 * np.exp(1j * phase))


@dataclass(frozen=True)
class WindingStatistics:
    """Turns of δ around 0 and around 1; diagnostic only."""

    around_zero: float
    around_one: float


def winding_statistics(traj: Trajectory) -> WindingStatistics:
    delta = traj.delta
    turns = []
    for center in (0, 1):
        angle = np.unwrap(np.angle(delta - center))
        turns.append(float((angle[-1] - angle[0]) / (2 * math.pi)))
    return WindingStatistics(*turns)


@dataclass(frozen=True)
class AccumulationReport:
    """‖γ‖ at the returns; `required` is the number of returns asked for."""

    return_times: tuple[float, ...]
    norms: tuple[float, ...]
    target: float
    required: int = 0

    @property
    def min_norm(self) -> float:
        return min(self.norms, default=math.inf)

    @property
    def passed(self) -> bool:
        return len(self.norms) >= self.required and self.min_norm < self.target


def local_minima(values: np.ndarray) -> np.ndarray:
    """Indices of interior samples below the previous and not above the next."""
    inner = (values[1:-1] < values[:-2]) & (values[1:-1] <= values[2:])
    return np.flatnonzero(inner) + 1


def return_times(traj: Trajectory) -> list[float]:
    """Times of the interior local minima of |γ₂|."""
    return [float(traj.t[k]) for k in local_minima(np.abs(traj.gamma2))]


def accumulation_check(
    traj: Trajectory,
    times: list[float] | None = None,
    target: float = IntegratorParams.ACCUMULATION_TARGET,
) -> AccumulationReport:
    """
    ‖γ(tₙ)‖ at the return times, interpolated on the samples.

    Raises:
        NotApplicableError: The trajectory blew up (irregular).
    """
    if traj.termination is Termination.BLOW_UP:
        raise NotApplicableError("blow-up trajectory is irregular")
    if times is None:
        times = return_times(traj)
    norms = np.interp(times, traj.t, traj.norms)
    return AccumulationReport(
        tuple(float(t) for t in times), tuple(float(n) for n in norms), target
    )


def origin_returns(
    params: FieldParams,
    gamma0: tuple[complex, complex],
    returns: int = IntegratorParams.ACCUMULATION_RETURNS,
    target: float = IntegratorParams.ACCUMULATION_TARGET,
    tau_max: float = IntegratorParams.SCALED_TAU_MAX,
) -> AccumulationReport:
    """
    ‖γ‖ at the first `returns` minima of |γ₂| along the orbit of `gamma0`.

    Returns are spaced geometrically in t, so the orbit is followed with
    `integrate_scaled`; return times are reported in its clock τ. Fewer
    returns than asked for fail the report.

    Raises:
        NotApplicableError: The trajectory blew up (irregular).
    """
    traj = integrate_scaled(params, gamma0, returns, tau_max=tau_max)
    if traj.termination is Termination.BLOW_UP:
        raise NotApplicableError("blow-up trajectory is irregular")
    idx = local_minima(traj.log_abs_gamma2)[:returns]
    return AccumulationReport(
        tuple(float(traj.tau[k]) for k in idx),
        tuple(math.exp(traj.log_norm[k]) for k in idx),
        target,
        required=returns,
    )
