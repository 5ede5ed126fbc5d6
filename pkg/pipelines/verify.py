"""
PIPELINE: ACCEPTANCE SUITE
----------------------------------------
Runs every acceptance criterion, one function each, and collects a
byte-stable report. An exception inside a criterion is reported as `error`
for that line only.
"""

from collections.abc import Callable
from fractions import Fraction
import math

import numpy as np

from pipelines.commands import (
    frame_to_csv,
    renorm_cantor_frame,
    rot_sweep_frame,
    sweep_angles,
)
from src.config.settings import IntervalParams, RenormParams
from src.field.diagnostics import (
    developing_straightness,
    origin_returns,
    phase_perturbed,
    projection_identity_residual,
)
from src.field.integrator import Trajectory, integrate, integrate_many
from src.field.vector_field import FieldParams, exact_line_flow
from src.geodesics.tracer import (
    first_return_ab,
    t_theta_oracle,
    three_cycle_convergence,
)
from src.interval.accumulation import lambda_accumulation
from src.interval.gaiet import t_theta, t_theta_from_tan
from src.interval.plateau import PlateauEndpoint, plateau_endpoints
from src.interval.rotation import (
    PeriodicOrbit,
    rotation_number_exact,
    translation_number_grid,
    witness_residual,
)
from src.renorm.cantor import box_dimension_estimate, cantor_cover, middle_thirds_cover
from src.renorm.induction import RenormState, mat_vec, rv_step
from src.renorm.model import ModelMap
from src.renorm.words import realizable_words, word_intervals
from src.schemas.config import RunConfig
from src.schemas.reports import CriterionResult, VerifyReport
from src.surface.model import build_model
from src.utils.errors import OrbitDiesError, PrecisionLossError
from src.utils.logger import log
from src.utils.scalars import Backend, format_scalar, to_backend

Outcome = tuple[bool, object, object]


def _rng(cfg: RunConfig, offset: int) -> np.random.Generator:
    return np.random.default_rng(cfg.seed + offset)


def sample_trajectories(
    params: FieldParams, count: int, seed: int, threads: int = 1
) -> list[Trajectory]:
    """
    Short regular arcs with δ₀ = 1/2 + iu and γ₂ = re^(iφ), staying well
    inside the region where the developing chart has a single branch.
    """
    rng = np.random.default_rng(seed)
    starts = []
    for _ in range(count):
        delta0 = 0.5 + 1j * rng.uniform(0.4, 0.8)
        gamma2 = rng.uniform(0.5, 1.0) * np.exp(1j * rng.uniform(0, 2 * math.pi))
        starts.append((complex(delta0 * gamma2), complex(gamma2)))
    return integrate_many(params, starts, 0.05, threads=threads, max_step=1e-3)


# --- SURFACE AND INTERVAL ---


def oracle_equivalence(cfg: RunConfig) -> Outcome:
    model = build_model()
    rng = _rng(cfg, 1)
    worst = 0.0
    for _ in range(1000):
        x = rng.uniform(0.001, 0.999)
        theta = rng.uniform(IntervalParams.THETA_TILDE, IntervalParams.THETA_MAX)
        traced = t_theta_oracle(model, x, theta)
        worst = max(worst, abs(t_theta(theta)(x) - traced))
    return worst < 1e-9, worst, "1e-9"


def angle_return(cfg: RunConfig) -> Outcome:
    model = build_model()
    rng = _rng(cfg, 2)
    worst = 0.0
    for _ in range(1000):
        x = rng.uniform(0.001, 0.999)
        theta = rng.uniform(IntervalParams.THETA_TILDE, IntervalParams.THETA_MAX)
        _, theta3 = first_return_ab(model, x, theta)
        worst = max(worst, abs(theta3 - theta))
    return worst < 1e-12, worst, "1e-12"


SPECIAL_CASES = {
    Fraction(1, 4): Fraction(0),
    Fraction(9, 16): Fraction(1),
    Fraction(7, 10): Fraction(1, 2),
    Fraction(33, 34): Fraction(0),
    Fraction(1): Fraction(0),
}


def translation_special_cases(cfg: RunConfig) -> Outcome:
    found = []
    ok = True
    for tan, expected in SPECIAL_CASES.items():
        result = rotation_number_exact(t_theta_from_tan(tan))
        witness = result.witness
        exact_witness = (
            isinstance(witness, PeriodicOrbit)
            and witness.exact
            and witness_residual(t_theta_from_tan(tan), witness) == 0
        )
        ok = ok and result.value == expected and exact_witness
        found.append(f"{format_scalar(tan)}->{result.value}")
    bound = ",".join(f"{format_scalar(t)}->{v}" for t, v in SPECIAL_CASES.items())
    return ok, ",".join(found), bound


def monotonicity(cfg: RunConfig) -> Outcome:
    n = IntervalParams.SWEEP_ITERS
    thetas = sweep_angles(
        IntervalParams.THETA_TILDE,
        IntervalParams.THETA_MAX,
        IntervalParams.SWEEP_POINTS,
    )
    values, bounds = translation_number_grid(np.tan(thetas), n)
    worst_rise = float(np.max(np.diff(values)))
    ends = max(min(v % 1.0, 1 - v % 1.0) for v in (values[0], values[-1]))
    ok = worst_rise <= 2 * bounds[0] and ends < 0.01
    measured = f"rise={worst_rise:.17g};ends={ends:.17g}"
    return ok, measured, f"rise<={2 / n:.17g};ends<0.01"


def three_cycle(cfg: RunConfig) -> Outcome:
    model = build_model()
    rng = _rng(cfg, 5)
    worst = 0.0
    inside = True
    for _ in range(100):
        x0 = rng.uniform(0.01, 0.99)
        theta = rng.uniform(0.1, IntervalParams.THETA_TILDE)
        report = three_cycle_convergence(model, x0, theta)
        worst = max(worst, max(abs(f - 1 / 16) for f in report.factors))
        inside = inside and 0 < report.limit < 1
    return worst < 1e-6 and inside, worst, "1e-6"


# --- RENORMALIZATION ---


def _random_model(rng: np.random.Generator, exact: bool) -> ModelMap:
    values = [
        rng.uniform(0.01, 0.5),
        rng.uniform(0.01, 0.5),
        rng.uniform(0.05, 1.0),
        rng.uniform(0.05, 1.0),
    ]
    return ModelMap(*(Fraction(v) if exact else v for v in values))


def _first_return_gap(state: RenormState, following: RenormState, rng) -> float:
    """Largest |induced − brute force| over sample points of the new domain."""
    old, new = state.current, following.current
    shift = following.origin - state.origin
    lo, hi = shift, shift + new.length
    worst = 0
    for u in rng.uniform(0.001, 0.999, size=20):
        x = lo + type(lo)(u) * (hi - lo)
        brute, _ = old.first_return(x, lo, hi)
        induced = new(x - shift) + shift
        worst = max(worst, abs(brute - induced))
    return worst


def renorm_first_return(cfg: RunConfig) -> Outcome:
    rng = _rng(cfg, 6)
    worst_float, exact_ok, lengths_ok, checked = 0.0, True, True, 0
    while checked < 200:
        exact = checked % 2 == 1
        model = _random_model(rng, exact)
        state = RenormState.start(model)
        following = rv_step(state)
        if following.status == "stopped":
            continue
        gap = _first_return_gap(state, following, rng)
        if exact:
            exact_ok = exact_ok and gap == 0
            final = following
            for _ in range(30):
                final = rv_step(final)
                if final.status == "stopped":
                    break
            lengths = mat_vec(final.matrix, (model.l_a, model.l_b))
            current = (final.current.l_a, final.current.l_b)
            lengths_ok = lengths_ok and lengths == current
        else:
            worst_float = max(worst_float, float(gap))
        checked += 1
    ok = worst_float <= 1e-12 and exact_ok and lengths_ok
    measured = f"float={worst_float:.17g};exact={exact_ok};lengths={lengths_ok}"
    return ok, measured, "float<=1e-12;exact=True;lengths=True"


def stopping_intervals(cfg: RunConfig) -> Outcome:
    lam, mu = RenormParams.LAMBDA, RenormParams.MU
    lo_eta, hi_eta = RenormParams.ETA_BOUNDS
    etas, ok = [], True
    for word in realizable_words(lam, mu, 6):
        info = word_intervals(lam, mu, word)
        etas.append(info.eta)
        ok = ok and info.eta == info.eta_upper and lo_eta <= info.eta <= hi_eta
        ok = ok and 1 <= info.eta_oriented <= 2
        ok = ok and info.ratio >= info.ratio_lower_bound(lo_eta, hi_eta)
        ok = ok and max(info.components) <= Fraction(1, 2)
    measured = f"eta_min={float(min(etas)):.17g};eta_max={float(max(etas)):.17g}"
    expected = "eta in [1/2,2];oriented eta in [1,2];ratio bound;components<=1/2"
    return ok, measured, expected


def cantor_covers(cfg: RunConfig) -> Outcome:
    forced = "backend" in cfg.model_fields_set
    backend = cfg.backend if forced else Backend.RATIONAL
    lam = to_backend(RenormParams.LAMBDA, backend)
    mu = to_backend(RenormParams.MU, backend)
    covers = []
    try:
        for n in range(cfg.depth + 1):
            covers.append(cantor_cover(lam, mu, n, threads=cfg.threads))
    except PrecisionLossError as e:
        log.warning(f"⚠️ Cantor covers lost precision: {e}")
        return False, f"precision_loss_at_depth={len(covers)}", "2^(n+1) intervals"
    estimate = box_dimension_estimate(covers)
    sized = all(
        count == 2 ** (n + 1) and longest <= 2.0 ** -(n + 1)
        for n, count, longest in zip(
            estimate.depths, estimate.counts, estimate.max_lengths, strict=True
        )
    )
    control = box_dimension_estimate([middle_thirds_cover(n) for n in range(8)])
    target = math.log(2) / math.log(3)
    control_gap = max(abs(s - target) for s in control.slopes)
    ok = sized and estimate.decreasing and control_gap < 0.02
    dims = estimate.cover_dimensions
    measured = (
        f"sized={sized};dims={dims[0]:.6f}..{dims[-1]:.6f};"
        f"decreasing={estimate.decreasing};control_gap={control_gap:.3e}"
    )
    return ok, measured, "sized=True;decreasing=True;control_gap<0.02"


# --- FIELD ---


def l0_exact_flow(cfg: RunConfig) -> Outcome:
    params = FieldParams.from_model()
    traj = integrate(params, (0j, 1 + 0j), 1.0)
    _, exact = exact_line_flow(params, "L0", 1 + 0j, traj.t)
    error = float(np.max(np.abs(traj.gamma2 - exact) / np.abs(exact)))
    return error < 1e-8, error, "1e-8"


def projection_identity(cfg: RunConfig) -> Outcome:
    params = FieldParams.from_model()
    trajs = sample_trajectories(params, 20, cfg.seed, cfg.threads)
    worst = max(projection_identity_residual(t) for t in trajs)
    return worst < 1e-6, worst, "1e-6"


def straightness(cfg: RunConfig) -> Outcome:
    params = FieldParams.from_model()
    trajs = sample_trajectories(params, 20, cfg.seed, cfg.threads)
    worst = max(developing_straightness(t) for t in trajs)
    control = min(developing_straightness(phase_perturbed(t)) for t in trajs)
    ok = worst < 1e-6 and control > 1e-2
    return ok, f"residual={worst:.17g};control={control:.17g}", "<1e-6;>1e-2"


def _saddle_start(end: PlateauEndpoint) -> Fraction:
    """A start on the side of the breakpoint the saddle orbit leaves from."""
    s = t_theta_from_tan(end.tan_exact).singularities[0]
    offset = min(Fraction(1, 100), s / 2, (1 - s) / 2)
    return s - offset if end.side == "left" else s + offset


def lambda_structure(cfg: RunConfig) -> Outcome:
    inside_plateau = t_theta_from_tan(Fraction(7, 10))
    interior = lambda_accumulation(inside_plateau, Fraction(1, 2), 60)
    ok = not interior.values and not interior.infinite
    found = []
    for p, q in ((1, 1), (1, 2), (0, 1)):
        plateau = plateau_endpoints(p, q)
        ends = [e for e in (plateau.lower, plateau.upper) if e.tan_exact is not None]
        ok = ok and bool(ends)
        for end in ends:
            base = t_theta_from_tan(end.tan_exact)
            x0 = _saddle_start(end)
            predicted = float(1 / (x0 - base.singularities[0]))
            try:
                runs = [lambda_accumulation(base, x0, d) for d in (40, 60)]
            except OrbitDiesError:
                ok = False
                continue
            for run in runs:
                ok = ok and (
                    len(run.values) == 1
                    and abs(run.values[0] - predicted) <= 1e-9 * abs(predicted)
                    and (run.zero_observed or end.period == 1)
                    and not run.infinite
                )
            found.append(f"{format_scalar(end.tan_exact)}:{runs[-1].describe()}")
    bound = "interior={0};each resolved end={0,1/(x0-s)}"
    return ok, ";".join(found) or "none", bound


def origin_accumulation(cfg: RunConfig) -> Outcome:
    params = FieldParams.from_model()
    delta0, gamma2 = 0.5 + 0.6j, 1 + 0j
    report = origin_returns(params, (delta0 * gamma2, gamma2))
    measured = f"min_norm={report.min_norm:.17g};returns={len(report.norms)}"
    return report.passed, measured, f"<{report.target};returns>={report.required}"


def determinism(cfg: RunConfig) -> Outcome:
    small = cfg.model_copy(
        update={
            "points": 64,
            "iterations": 2000,
            "depth": 4,
            "threads": 1,
            "backend": Backend.RATIONAL,
            "lam": RenormParams.LAMBDA,
            "mu": RenormParams.MU,
        }
    )
    parallel = small.model_copy(update={"threads": 2})
    texts = []
    for run in (small, small, parallel):
        texts.append(
            frame_to_csv(rot_sweep_frame(run)) + frame_to_csv(renorm_cantor_frame(run))
        )
    ok = len(set(texts)) == 1
    return ok, f"identical={ok}", "identical=True"


CRITERIA: list[tuple[str, Callable[[RunConfig], Outcome]]] = [
    ("oracle_equivalence", oracle_equivalence),
    ("angle_return", angle_return),
    ("translation_special_cases", translation_special_cases),
    ("monotonicity_continuity", monotonicity),
    ("three_cycle_attraction", three_cycle),
    ("renormalization_first_return", renorm_first_return),
    ("stopping_intervals", stopping_intervals),
    ("cantor_covers", cantor_covers),
    ("l0_exact_flow", l0_exact_flow),
    ("projection_identity", projection_identity),
    ("developing_straightness", straightness),
    ("lambda_case_structure", lambda_structure),
    ("origin_accumulation", origin_accumulation),
    ("determinism", determinism),
]


def run_criterion(index: int, cfg: RunConfig) -> CriterionResult:
    name, check = CRITERIA[index - 1]
    log.info(f"🔎 [{index}/{len(CRITERIA)}] {name}")
    try:
        ok, measured, bound = check(cfg)
        status = "pass" if ok else "fail"
    except Exception as e:
        log.error(f"❌ {name} raised {type(e).__name__}: {e}")
        status, measured, bound = "error", type(e).__name__, "-"
    return CriterionResult(
        id=index, name=name, status=status, measured=measured, bound=bound
    )


def verify_all(cfg: RunConfig) -> VerifyReport:
    log.info("🚀 STARTING ACCEPTANCE SUITE")
    report = VerifyReport(
        criteria=[run_criterion(k, cfg) for k in range(1, len(CRITERIA) + 1)]
    )
    if report.passed:
        log.info("✅ All criteria passed.")
    else:
        failed = [c.name for c in report.criteria if c.status != "pass"]
        log.warning(f"⚠️ Criteria not passing: {', '.join(failed)}")
    return report


FIELD_CHECKS = {"l0": 9, "identity": 10, "straightness": 11}


def field_verify(cfg: RunConfig, which: str) -> VerifyReport:
    """One of the field criteria on its own."""
    return VerifyReport(criteria=[run_criterion(FIELD_CHECKS[which], cfg)])
