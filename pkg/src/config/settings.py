"""
Global Configuration Settings.
Single Source of Truth (SSOT) for the entire project.
This module centralizes the numerical tolerances, budgets, paths and runtime
defaults used by the surface, interval, renormalization and field layers.
"""

from fractions import Fraction
import math
import os
from pathlib import Path

from dotenv import load_dotenv

# Load Environmental Variables
load_dotenv()


class Paths:
    """Centralized management of project file paths."""

    ROOT = Path(__file__).resolve().parent.parent.parent
    LOGS = ROOT / "logs"
    OUTPUTS = ROOT / "outputs"
    FIGURES = OUTPUTS / "figures"

    @classmethod
    def make_dirs(cls):
        """Create necessary directories if they don't exist."""
        for path in [cls.LOGS, cls.OUTPUTS, cls.FIGURES]:
            path.mkdir(parents=True, exist_ok=True)


Paths.make_dirs()


class FileNames:
    """Centralized file names to avoid magic strings in code."""

    EXECUTION_LOG = "execution.log"


class SurfaceParams:
    """The glued quadrilateral: vertex affixes and numerical tolerances."""

    VERTICES: dict[str, complex] = {
        "A": 0j,
        "B": -1j,
        "C": 2 + 1j,
        "D": 1j,
    }
    # Edges are parameterized from their first-named vertex.
    EDGES: dict[str, tuple[str, str]] = {
        "AB": ("A", "B"),
        "BC": ("B", "C"),
        "CD": ("C", "D"),
        "AD": ("A", "D"),
    }
    EPS_VERTEX = 1e-10
    CONSISTENCY_TOL = 1e-12


class GeodesicParams:
    """Ray tracing and regularity classification."""

    INTERSECTION_TOL = 1e-12
    TRAPPED_EXITS = 40
    TRAPPED_LENGTH_BOUND = 4 * math.sqrt(2)
    STEP_BUDGET = 3000
    LENGTH_BUDGET = 1e12


class IntervalParams:
    """Closed-form T_theta, rotation numbers and accumulation sets."""

    THETA_TILDE = math.pi / 2 - math.atan(2)
    THETA_MAX = math.pi / 4
    SLOPE = 16
    SNAP_TOL = 1e-14
    SINGULAR_TOL = 1e-14
    TRANSIENT = 200
    Q_MAX = 64
    PERIOD_TOL = 1e-12
    FLOAT_WITNESS_TOL = 1e-10
    FALLBACK_ITERS = 10**6
    PLATEAU_FALLBACK_ITERS = 10**5
    BISECTION_WIDTH = 1e-12
    DOMAIN_EDGE_TOL = 1e-10
    SWEEP_POINTS = 2000
    SWEEP_ITERS = 10**5
    LAMBDA_ZERO = 1e-6
    LAMBDA_INFINITY = 1e6
    CLUSTER_RTOL = 1e-3
    FLOAT_DEPTH_LIMIT = 12


class RenormParams:
    """Two-interval model class and the parameter-space Cantor set."""

    LAMBDA = Fraction(1, 16)
    MU = Fraction(1, 16)
    MAX_STEPS = 64
    CANTOR_DEPTH = 12
    ETA_BOUNDS = (Fraction(1, 2), Fraction(2))
    FLOAT_DEPTH_LIMIT = 10
    DIMENSION_WINDOW = 3


class IntegratorParams:
    """Adaptive integration of the quadratic vector field and its diagnostics."""

    ATOL = 1e-12
    RTOL = 1e-10
    H_INIT = 1e-3
    H_MIN_FACTOR = 1e-14
    SAFETY = 0.8
    MIN_FACTOR = 0.1
    MAX_FACTOR = 5.0
    BLOWUP_NORM = 1e8
    LINE_DISTANCE = 1e-12
    MAX_STEPS = 2_000_000
    SINGULAR_DISTANCE = 0.05
    BRANCH_DISTANCE = 0.1
    BRANCH_MAX_MODULUS = 10.0
    BRANCH_MAX_SPACING = 0.05
    ACCUMULATION_TARGET = 1e-3
    ACCUMULATION_RETURNS = 50
    SCALED_TAU_MAX = 1e5


class RuntimeConfig:
    """Process-level defaults overridable from the environment."""

    THREADS = int(os.getenv("DILATION_THREADS", "1"))
    SEED = int(os.getenv("DILATION_SEED", "20240607"))
    CSV_FLOAT_FORMAT = "%.17g"
