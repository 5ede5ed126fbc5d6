"""
PIPELINE: FIGURES
----------------------------------------
Renders CSV output of the other subcommands as SVG:
1. sweep: transl(θ) from `rot sweep` (the devil's staircase).
2. cantor: cover counts and dimension estimates from `renorm cantor`.
3. trajectory: δ(t) and ‖γ(t)‖ from `field integrate`.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402
import seaborn as sns  # noqa: E402

from src.utils.logger import log  # noqa: E402

# Style settings
plt.style.use("ggplot")
sns.set_theme(style="white")

PLOT_KINDS = ("sweep", "cantor", "trajectory")

REQUIRED_COLUMNS = {
    "sweep": {"theta", "transl_estimate"},
    "cantor": {"depth", "count", "dim_estimate"},
    "trajectory": {"t", "g1re", "g1im", "g2re", "g2im", "dre", "dim"},
}


def plot_sweep(df: pd.DataFrame) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(10, 6))
    ax.plot(np.degrees(df["theta"]), df["transl_estimate"], lw=1.2, color="tab:blue")
    ax.set_title("Translation number of T_θ")
    ax.set_xlabel("θ (degrees)")
    ax.set_ylabel("transl")
    return fig


def plot_cantor(df: pd.DataFrame) -> plt.Figure:
    fig, (left, right) = plt.subplots(1, 2, figsize=(12, 5))
    sns.lineplot(data=df, x="depth", y="count", marker="o", ax=left)
    left.set_yscale("log", base=2)
    left.set_title("Intervals in K_n")
    sns.lineplot(data=df, x="depth", y="dim_estimate", marker="o", ax=right)
    right.set_title("Cover dimension of K_n")
    fig.tight_layout()
    return fig


def plot_trajectory(df: pd.DataFrame) -> plt.Figure:
    fig, (left, right) = plt.subplots(1, 2, figsize=(12, 5))
    left.plot(df["dre"], df["dim"], lw=1.0, color="tab:purple")
    left.scatter([0, 1], [0, 0], color="black", zorder=3)
    left.set_title("δ(t) = γ₁/γ₂")
    left.set_xlabel("Re δ")
    left.set_ylabel("Im δ")
    norm = np.hypot(np.hypot(df["g1re"], df["g1im"]), np.hypot(df["g2re"], df["g2im"]))
    right.semilogy(df["t"], norm, lw=1.0)
    right.set_title("‖γ(t)‖")
    right.set_xlabel("t")
    fig.tight_layout()
    return fig


PLOTTERS = {"sweep": plot_sweep, "cantor": plot_cantor, "trajectory": plot_trajectory}


def render_plot(csv_path: Path | str, kind: str, output_path: Path | str) -> Path:
    """
    Reads a CSV produced by another subcommand and writes an SVG figure.

    Args:
        csv_path: Input CSV.
        kind: One of PLOT_KINDS.
        output_path: Target file; the format follows its suffix.

    Returns:
        The written path.

    Raises:
        ValueError: Unknown kind or the CSV lacks the needed columns.
    """
    if kind not in PLOTTERS:
        raise ValueError(f"unknown plot kind {kind!r}; choose from {PLOT_KINDS}")
    df = pd.read_csv(csv_path)
    missing = REQUIRED_COLUMNS[kind] - set(df.columns)
    if missing:
        raise ValueError(f"{csv_path} lacks columns {sorted(missing)} for {kind!r}")

    fig = PLOTTERS[kind](df)
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(output_path)
    plt.close(fig)
    log.info(f"📊 Saved {kind} plot: {output_path.name}")
    return output_path
