"""
PIPELINE: SUBCOMMANDS
----------------------------------------
One function per CLI subcommand. Each takes a validated RunConfig and
returns a DataFrame (CSV output) or key=value text; writing is left to the
caller so the results stay testable.
"""

from fractions import Fraction
import math
from pathlib import Path
import sys

import numpy as np
import pandas as pd

from src.config.settings import RuntimeConfig
from src.field.integrator import integrate
from src.field.vector_field import FieldParams
from src.geodesics.phase import PhasePoint
from src.geodesics.tracer import trace_orbit
from src.interval.accumulation import lambda_accumulation
from src.interval.gaiet import GaietMap, t_theta, t_theta_from_tan
from src.interval.plateau import PlateauEndpoint, plateau_endpoints
from src.interval.rotation import detect_periodic_orbit, translation_number_grid
from src.renorm.cantor import box_dimension_estimate, cantor_cover
from src.renorm.induction import rv_run
from src.renorm.model import ModelMap
from src.schemas.config import RunConfig
from src.schemas.reports import SurfaceReport
from src.surface.model import build_model, validate
from src.utils.errors import DilationSurfaceError
from src.utils.logger import log
from src.utils.parallel import chunked, run_parallel
from src.utils.scalars import Backend, Scalar, format_scalar, parse_scalar, to_backend

LAMBDA_DEPTH = 60


# --- OUTPUT ---


def frame_to_csv(df: pd.DataFrame) -> str:
    return df.to_csv(
        index=False, float_format=RuntimeConfig.CSV_FLOAT_FORMAT, lineterminator="\n"
    )


def emit(text: str, out: str | None) -> None:
    """Writes to stdout when `out` is None or '-', otherwise to a file."""
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    log.info(f"💾 Saved to: {path}")


def _lines(pairs: list[tuple[str, object]]) -> str:
    rendered = []
    for key, value in pairs:
        if isinstance(value, Fraction | float):
            value = format_scalar(value)
        rendered.append(f"{key}={value}")
    return "\n".join(rendered) + "\n"


def _interval_map(cfg: RunConfig) -> GaietMap:
    if cfg.tan_theta is not None:
        return t_theta_from_tan(cfg.tan_theta)
    if cfg.theta is not None:
        return t_theta(cfg.theta)
    raise ValueError("either --tan-theta or --theta is required")


def _start(cfg: RunConfig) -> Scalar:
    return cfg.x0 if cfg.x0 is not None else to_backend(Fraction(1, 2), cfg.backend)


# --- SURFACE AND GEODESICS ---


def surface_validate(cfg: RunConfig) -> SurfaceReport:
    return validate(build_model())


def geodesic_trace_frame(cfg: RunConfig) -> pd.DataFrame:
    """Poincaré orbit from (AB, x0) in direction θ; exact for a rational slope."""
    model = build_model()
    x0 = _start(cfg)
    if cfg.tan_theta is not None:
        start = PhasePoint.from_slope("AB", x0, cfg.tan_theta)
    elif cfg.theta is not None:
        start = PhasePoint.from_angle("AB", x0, cfg.theta)
    else:
        raise ValueError("either --tan-theta or --theta is required")

    record = trace_orbit(model, start, cfg.steps)
    log.info(f"🔎 Trace ended by {record.termination} after {len(record.steps)} steps")
    rows = [
        {
            "step": k,
            "edge": step.point.edge,
            "s": step.point.s,
            "theta": step.point.theta,
            "speed_scale": step.speed_scale,
            "cumulative_length": step.cumulative_length,
            "exit_edge": step.exit_edge,
            "segment_length": step.segment_length,
            "log_speed_scale": step.log_speed_scale,
            "termination": str(record.termination),
        }
        for k, step in enumerate(record.steps, start=1)
    ]
    return pd.DataFrame(rows)


# --- ROTATION NUMBERS ---


def sweep_angles(theta_min: float, theta_max: float, points: int) -> np.ndarray:
    """Midpoints of `points` equal cells of [theta_min, theta_max]."""
    width = (theta_max - theta_min) / points
    return theta_min + width * (np.arange(points) + 0.5)


def _periodic_label(tan_theta: float) -> str:
    """'p/q' of the attracting cycle seen from x₀ = 1/2, or '' if none."""
    try:
        orbit = detect_periodic_orbit(t_theta_from_tan(tan_theta), side="right")
    except (DilationSurfaceError, ValueError):
        return ""
    return "" if orbit is None else f"{orbit.p}/{orbit.q}"


def _sweep_chunk(args: tuple[np.ndarray, int]) -> tuple[np.ndarray, list[str]]:
    tans, n = args
    estimates = translation_number_grid(tans, n)[0]
    return estimates, [_periodic_label(float(m)) for m in tans]


def rot_sweep_frame(cfg: RunConfig) -> pd.DataFrame:
    """transl(θ) on a grid; independent of the thread count."""
    log.info(f"🚀 Sweeping {cfg.points} angles, {cfg.iterations} iterations each")
    thetas = sweep_angles(cfg.theta_min, cfg.theta_max, cfg.points)
    tans = np.tan(thetas)
    chunks = [
        (tans[idx], cfg.iterations)
        for idx in chunked(np.arange(cfg.points), cfg.threads)
    ]
    results = run_parallel(
        _sweep_chunk, chunks, threads=cfg.threads, desc="sweep", progress=True
    )
    return pd.DataFrame(
        {
            "theta": thetas,
            "tan_theta": tans,
            "transl_estimate": np.concatenate([r[0] for r in results]),
            "error_bound": np.full(cfg.points, 1.0 / cfg.iterations),
            "exact_pq_if_found": [label for r in results for label in r[1]],
        }
    ).sort_values("theta", ignore_index=True)


def _endpoint_pairs(name: str, end: PlateauEndpoint) -> list[tuple[str, object]]:
    return [
        (f"{name}_theta", end.theta),
        (f"{name}_degrees", end.degrees),
        (f"{name}_kind", end.kind),
        (f"{name}_tan", end.tan_exact if end.tan_exact is not None else "-"),
        (f"{name}_side", end.side or "-"),
    ]


def rot_plateau(cfg: RunConfig) -> str:
    plateau = plateau_endpoints(cfg.p, cfg.q)
    pairs: list[tuple[str, object]] = [("target", plateau.target)]
    pairs += _endpoint_pairs("lower", plateau.lower)
    pairs += _endpoint_pairs("upper", plateau.upper)
    return _lines(pairs)


def limits_lambda(cfg: RunConfig) -> str:
    """Λ for the orbit of x0 under T_θ."""
    depth = cfg.depth if "depth" in cfg.model_fields_set else LAMBDA_DEPTH
    base = _interval_map(cfg)
    result = lambda_accumulation(base, _start(cfg), depth)
    pairs: list[tuple[str, object]] = [
        ("tan_theta", base.tan_theta),
        ("x0", _start(cfg)),
        ("depth", depth),
        ("lambda", result.describe()),
        ("counts", ",".join(str(c) for c in result.counts) or "-"),
        ("zero_observed", str(result.zero_observed).lower()),
        ("infinite", str(result.infinite).lower()),
        ("gap_index", result.gap_index if result.gap_index is not None else "-"),
        ("gap_values", ",".join(f"{v:.17g}" for v in result.gap_values) or "-"),
    ]
    return _lines(pairs)


# --- RENORMALIZATION ---


def renorm_run(cfg: RunConfig) -> str:
    s = cfg.s if cfg.s is not None else to_backend(Fraction(1, 3), cfg.backend)
    one = to_backend(1, cfg.backend)
    state = rv_run(ModelMap(cfg.lam, cfg.mu, s, one - s), cfg.max_steps)
    (a, b), (c, d) = state.matrix
    lam_n, mu_n = state.factors[-1]
    pairs: list[tuple[str, object]] = [
        ("word", state.word or "-"),
        ("steps", len(state.word)),
        ("status", state.status),
        ("lambda_n", lam_n),
        ("mu_n", mu_n),
        ("l_a", state.current.l_a),
        ("l_b", state.current.l_b),
        ("matrix", " ".join(format_scalar(v) for v in (a, b, c, d))),
    ]
    if state.period_two is not None:
        orbit = " ".join(format_scalar(v) for v in state.period_two)
        pairs.append(("period_two", orbit))
    return _lines(pairs)


def cantor_parameters(cfg: RunConfig) -> tuple[Scalar, Scalar]:
    """
    λ and μ for the Cantor covers.

    Exact unless the backend was chosen explicitly: float covers lose
    intervals past `RenormParams.FLOAT_DEPTH_LIMIT`.
    """
    if "backend" in cfg.model_fields_set:
        return cfg.lam, cfg.mu
    return (
        parse_scalar(str(cfg.lam), Backend.RATIONAL),
        parse_scalar(str(cfg.mu), Backend.RATIONAL),
    )


def renorm_cantor_frame(cfg: RunConfig) -> pd.DataFrame:
    """Counts, max lengths and dimension estimates of K_0 ... K_depth."""
    lam, mu = cantor_parameters(cfg)
    covers = [
        cantor_cover(lam, mu, n, threads=cfg.threads) for n in range(cfg.depth + 1)
    ]
    estimate = box_dimension_estimate(covers)
    slopes = list(estimate.slopes) + [math.nan] * (len(covers) - len(estimate.slopes))
    return pd.DataFrame(
        {
            "depth": estimate.depths,
            "count": estimate.counts,
            "max_len": estimate.max_lengths,
            "dim_estimate": estimate.cover_dimensions,
            "window_slope": slopes,
        }
    )


# --- FIELD ---


def field_integrate_frame(cfg: RunConfig) -> pd.DataFrame:
    params = FieldParams.from_model()
    gamma0 = (complex(cfg.x0re, cfg.x0im), complex(cfg.y0re, cfg.y0im))
    traj = integrate(
        params, gamma0, cfg.t_end, rtol=cfg.tol, atol=cfg.atol, max_step=cfg.max_step
    )
    log.info(f"🔎 {len(traj)} samples, termination={traj.termination}")
    if traj.blowup_time is not None:
        log.info(f"🔎 Estimated blow-up time t*={traj.blowup_time:.17g}")
    return traj.to_frame()

