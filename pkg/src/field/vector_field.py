"""
Homogeneous Quadratic Vector Field.
v = v₁∂x + v₂∂y on C² whose real-time trajectories project, through
δ = γ₁/γ₂, onto geodesics of the surface. The three lines x=0, x=y and y=0
are invariant and carry explicit flows.
"""

from dataclasses import dataclass
import math
from typing import Literal

import numpy as np

from src.surface.model import SurfaceModel, build_model

Line = Literal["L0", "L1", "Linf"]


@dataclass(frozen=True)
class FieldParams:
    """Residues α₀, α₁, α_∞ of the three singular points."""

    alpha0: complex
    alpha1: complex
    alpha_inf: complex

    @classmethod
    def from_model(cls, model: SurfaceModel | None = None) -> "FieldParams":
        cone = (model or build_model()).cone_data
        return cls(cone["0"].alpha, cone["1"].alpha, cone["inf"].alpha)

    @property
    def mu0(self) -> complex:
        return self.alpha0 / (2 * math.pi)

    @property
    def mu1(self) -> complex:
        return self.alpha1 / (2 * math.pi)

    @property
    def total(self) -> complex:
        return self.alpha0 + self.alpha1 + self.alpha_inf

    def coefficients(self) -> dict[str, complex]:
        """v₁ = a·x² + b·xy, v₂ = c·xy + d·y²."""
        return {
            "a": -self.alpha_inf,
            "b": self.alpha1 + self.alpha_inf,
            "c": self.alpha0 + self.alpha1,
            "d": -self.alpha0,
        }


def eval_field(params: FieldParams, x, y):
    """(v₁, v₂) at (x, y); accepts scalars or numpy arrays."""
    v1 = -params.alpha_inf * x * x + (params.alpha1 + params.alpha_inf) * x * y
    v2 = (params.alpha0 + params.alpha1) * x * y - params.alpha0 * y * y
    return v1, v2


def p(z):
    """p(z) = 2πz(z − 1), the projection of x·v₂ − y·v₁."""
    return 2 * math.pi * z * (z - 1)


def projected_velocity(params: FieldParams, g1, g2):
    """δ′ = (v₁γ₂ − γ₁v₂)/γ₂² along a trajectory."""
    v1, v2 = eval_field(params, g1, g2)
    return (v1 * g2 - g1 * v2) / (g2 * g2)


def characteristic_line_distance(g1, g2) -> float:
    """Smallest normalized distance from (γ₁, γ₂) to L₀, L₁ or L_∞."""
    norm = math.hypot(abs(g1), abs(g2))
    if norm == 0:
        return 0.0
    return min(abs(g1), abs(g1 - g2) / math.sqrt(2), abs(g2)) / norm


def exact_line_flow(params: FieldParams, line: Line, z0: complex, t):
    """
    Closed-form flow on a characteristic line.

    On L₀ the field is −α₀y²∂y, so y(t) = 1/(1/y₀ + α₀t); L₁ and L_∞ are
    the same with α₁ (sign flipped) and α_∞. Returns (γ₁(t), γ₂(t)).
    """
    t = np.asarray(t, dtype=float)
    if line == "L0":
        y = 1 / (1 / z0 + params.alpha0 * t)
        return np.zeros_like(y), y
    if line == "L1":
        x = 1 / (1 / z0 - params.alpha1 * t)
        return x, x
    if line == "Linf":
        x = 1 / (1 / z0 + params.alpha_inf * t)
        return x, np.zeros_like(x)
    raise ValueError(f"unknown characteristic line {line!r}")
