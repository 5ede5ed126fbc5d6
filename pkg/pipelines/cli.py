"""
PIPELINE: COMMAND LINE
----------------------------------------
Entry point of the `dilation` console script.
Parses nested subcommands, merges flags > config file > defaults into a
RunConfig and dispatches to pipelines.commands. Exit codes: 0 ok,
1 failed check or domain error, 2 invalid usage or configuration.
"""

import argparse
from collections.abc import Callable
from typing import Any

from pydantic import ValidationError

from pipelines import commands
from pipelines.plots import PLOT_KINDS, render_plot
from pipelines.verify import FIELD_CHECKS, field_verify, verify_all
from src.config.settings import Paths
from src.schemas.config import RunConfig, load_run_config
from src.schemas.reports import VerifyReport
from src.utils.errors import DilationSurfaceError
from src.utils.logger import log

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file read before the flags")
    common.add_argument("--backend", choices=["float", "rational"])
    common.add_argument("--threads", type=int)
    common.add_argument("--seed", type=int)
    return common


def build_parser() -> argparse.ArgumentParser:
    """Every flag defaults to None so unset flags never mask the config file."""
    common = _common()
    parser = argparse.ArgumentParser(
        prog="dilation",
        description="Geodesic flow and renormalization on an affine surface.",
    )
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(group, name: str, help_text: str) -> argparse.ArgumentParser:
        return group.add_parser(name, parents=[common], help=help_text)

    surface = groups.add_parser("surface").add_subparsers(dest="action", required=True)
    leaf(surface, "validate", "Recompute cone angles and log-ratios.")

    geodesic = groups.add_parser("geodesic")
    geodesic = geodesic.add_subparsers(dest="action", required=True)
    trace = leaf(geodesic, "trace", "Poincaré orbit from a point of [A,B].")
    trace.add_argument("--x", dest="x0")
    trace.add_argument("--theta", type=float)
    trace.add_argument("--tan-theta", dest="tan_theta")
    trace.add_argument("--steps", type=int)
    trace.add_argument("--out")

    rot = groups.add_parser("rot").add_subparsers(dest="action", required=True)
    sweep = leaf(rot, "sweep", "Translation number of T_θ over a θ grid.")
    sweep.add_argument("--from", dest="theta_min", type=float)
    sweep.add_argument("--to", dest="theta_max", type=float)
    sweep.add_argument("--n", dest="points", type=int)
    sweep.add_argument("--iters", dest="iterations", type=int)
    sweep.add_argument("--out")
    plateau = leaf(rot, "plateau", "θ-interval where the rotation number is p/q.")
    plateau.add_argument("--p", type=int)
    plateau.add_argument("--q", type=int)

    limits = groups.add_parser("limits").add_subparsers(dest="action", required=True)
    lam = leaf(limits, "lambda", "Accumulation set Λ of a T_θ orbit.")
    lam.add_argument("--tan-theta", dest="tan_theta")
    lam.add_argument("--theta", type=float)
    lam.add_argument("--x0")
    lam.add_argument("--depth", type=int)

    renorm = groups.add_parser("renorm").add_subparsers(dest="action", required=True)
    run = leaf(renorm, "run", "Renormalization steps of a two-interval model.")
    run.add_argument("--lambda", dest="lam")
    run.add_argument("--mu")
    run.add_argument("--s")
    run.add_argument("--max-steps", dest="max_steps", type=int)
    cantor = leaf(renorm, "cantor", "Covers K_n of the parameter Cantor set.")
    cantor.add_argument("--lambda", dest="lam")
    cantor.add_argument("--mu")
    cantor.add_argument("--depth", type=int)
    cantor.add_argument("--out")

    field = groups.add_parser("field").add_subparsers(dest="action", required=True)
    integ = leaf(field, "integrate", "Integrate the quadratic vector field.")
    for name in ("x0re", "x0im", "y0re", "y0im"):
        integ.add_argument(f"--{name}", type=float)
    integ.add_argument("--t", dest="t_end", type=float)
    integ.add_argument("--tol", type=float)
    integ.add_argument("--atol", type=float)
    integ.add_argument("--max-step", dest="max_step", type=float)
    integ.add_argument("--out")
    fverify = leaf(field, "verify", "One field check on its own.")
    fverify.add_argument("--which", choices=sorted(FIELD_CHECKS), required=True)
    fverify.add_argument("--json", action="store_true")
    fverify.add_argument("--out")

    verify = groups.add_parser("verify").add_subparsers(dest="action", required=True)
    vall = leaf(verify, "all", "Run the full acceptance suite.")
    vall.add_argument("--json", action="store_true")
    vall.add_argument("--out")

    plot = groups.add_parser("plot", parents=[common], help="Render a CSV as SVG.")
    plot.add_argument("--csv", required=True)
    plot.add_argument("--kind", choices=PLOT_KINDS, required=True)
    plot.add_argument("--out")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """
    Raises:
        pydantic.ValidationError: Invalid flag or config-file value.
    """
    flags = {k: v for k, v in vars(args).items() if k in RunConfig.model_fields}
    return load_run_config(flags, args.config)


# --- HANDLERS ---


def _report(report: VerifyReport, args: argparse.Namespace) -> int:
    text = report.model_dump_json(indent=2) + "\n" if args.json else report.to_text()
    commands.emit(text, args.out)
    return EXIT_OK if report.passed else EXIT_FAILURE


def _surface_validate(cfg: RunConfig, args: argparse.Namespace) -> int:
    report = commands.surface_validate(cfg)
    commands.emit("\n".join(report.to_lines()) + "\n", None)
    return EXIT_OK if report.consistent else EXIT_FAILURE


def _frame(build: Callable[[RunConfig], Any]) -> Callable[..., int]:
    def handler(cfg: RunConfig, args: argparse.Namespace) -> int:
        commands.emit(commands.frame_to_csv(build(cfg)), cfg.out)
        return EXIT_OK

    return handler


def _text(build: Callable[[RunConfig], str]) -> Callable[..., int]:
    def handler(cfg: RunConfig, args: argparse.Namespace) -> int:
        commands.emit(build(cfg), None)
        return EXIT_OK

    return handler


def _plot(cfg: RunConfig, args: argparse.Namespace) -> int:
    out = args.out or Paths.FIGURES / f"{args.kind}.svg"
    try:
        render_plot(args.csv, args.kind, out)
    except (OSError, ValueError) as e:
        log.error(f"❌ Plot failed: {e}")
        return EXIT_USAGE
    return EXIT_OK


Handler = Callable[[RunConfig, argparse.Namespace], int]

HANDLERS: dict[tuple[str, str | None], Handler] = {
    ("surface", "validate"): _surface_validate,
    ("geodesic", "trace"): _frame(commands.geodesic_trace_frame),
    ("rot", "sweep"): _frame(commands.rot_sweep_frame),
    ("rot", "plateau"): _text(commands.rot_plateau),
    ("limits", "lambda"): _text(commands.limits_lambda),
    ("renorm", "run"): _text(commands.renorm_run),
    ("renorm", "cantor"): _frame(commands.renorm_cantor_frame),
    ("field", "integrate"): _frame(commands.field_integrate_frame),
    ("field", "verify"): lambda cfg, args: _report(field_verify(cfg, args.which), args),
    ("verify", "all"): lambda cfg, args: _report(verify_all(cfg), args),
    ("plot", None): _plot,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    try:
        cfg = config_from_args(args)
    except ValidationError as e:
        log.error(f"❌ Invalid configuration:\n{e}")
        return EXIT_USAGE
    except OSError as e:
        log.error(f"❌ Config file unreadable: {e}")
        return EXIT_USAGE

    handler = HANDLERS[(args.group, getattr(args, "action", None))]
    try:
        return handler(cfg, args)
    except ValueError as e:
        log.error(f"❌ {e}")
        return EXIT_USAGE
    except DilationSurfaceError as e:
        log.error(f"❌ {type(e).__name__}: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    try:
        raise SystemExit(main())
    except KeyboardInterrupt:
        log.warning("🛑 Execution stopped by user.")
        raise SystemExit(130) from None
