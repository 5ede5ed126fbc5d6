"""
Parameter-Space Cantor Set.
K_n is what remains of the singularity parameters after removing every
stopping interval H(w) with |w| ≤ n: the union of I(w) over words of length
n + 1. Box counting over increasing depths gives a dimension trend.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq
from scipy.special import logsumexp

from src.config.settings import RenormParams
from src.renorm.words import WordNode
from src.utils.errors import PrecisionLossError
from src.utils.logger import log
from src.utils.parallel import run_parallel
from src.utils.scalars import Scalar, is_exact, log_abs


@dataclass(frozen=True)
class CoverInterval:
    word: str
    lo: Scalar
    hi: Scalar

    @property
    def length(self) -> Scalar:
        return self.hi - self.lo


@dataclass(frozen=True)
class DimensionEstimate:
    """
    Box-counting summary of a sequence of covers.

    `slopes[k]` fits log(count) against −log(max length) over the window of
    depths starting at `depths[k]`; `cover_dimensions[n]` solves
    Σ|J|^d = 1 for the cover at depth n.
    """

    depths: tuple[int, ...]
    counts: tuple[int, ...]
    max_lengths: tuple[float, ...]
    slopes: tuple[float, ...]
    cover_dimensions: tuple[float, ...]

    @property
    def decreasing(self) -> bool:
        dims = self.cover_dimensions
        return all(b < a for a, b in zip(dims, dims[1:], strict=False))


def _subtree(args: tuple[str, WordNode, int]) -> list[CoverInterval]:
    """Leaves of length `target` under one node, depth first."""
    word, node, target = args
    if len(word) == target:
        lo, hi = node.interval
        return [CoverInterval(word, lo, hi)]
    leaves: list[CoverInterval] = []
    for letter in "LR":
        child = node.child(letter)
        if child is not None:
            leaves.extend(_subtree((word + letter, child, target)))
    return leaves


def cantor_cover(
    lam: Scalar, mu: Scalar, depth: int, threads: int = 1
) -> list[CoverInterval]:
    """
    The 2^(depth+1) intervals of K_depth, sorted by left end.

    Args:
        lam: Contraction of branch A; a Fraction keeps everything exact.
        mu: Contraction of branch B.
        depth: n ≥ 0.
        threads: Subtrees below the first letters are explored in parallel.

    Raises:
        PrecisionLossError: Float arithmetic collapsed an interval, so the
            cover lost components.
    """
    if depth < 0:
        raise ValueError(f"depth must be ≥ 0, got {depth}")
    exact = is_exact(lam) and is_exact(mu)
    if not exact and depth > RenormParams.FLOAT_DEPTH_LIMIT:
        log.warning(
            f"⚠️ Float cover at depth {depth}: lengths shrink like 16^-n and "
            "may fall below double precision."
        )

    root = WordNode.root(lam, mu)
    seeds = [(letter, root.child(letter)) for letter in "LR"]
    items = [(w, node, depth + 1) for w, node in seeds if node is not None]
    leaves = [
        leaf
        for chunk in run_parallel(_subtree, items, threads=threads)
        for leaf in chunk
    ]
    leaves.sort(key=lambda c: (c.lo, c.word))

    expected = 2 ** (depth + 1)
    if len(leaves) != expected or any(c.length <= 0 for c in leaves):
        raise PrecisionLossError(
            f"cover at depth {depth} has {len(leaves)} of {expected} intervals"
        )
    longest = max(c.length for c in leaves)
    assert longest <= Fraction(1, expected), f"max length {longest} too large"
    return leaves


def middle_thirds_cover(depth: int) -> list[CoverInterval]:
    """The 2^depth intervals of the depth-th middle-thirds construction."""
    intervals = [CoverInterval("", Fraction(0), Fraction(1))]
    for _ in range(depth):
        following = []
        for c in intervals:
            third = c.length / 3
            following.append(CoverInterval(c.word + "0", c.lo, c.lo + third))
            following.append(CoverInterval(c.word + "2", c.hi - third, c.hi))
        intervals = following
    return intervals


def cover_dimension(cover: list[CoverInterval]) -> float:
    """The d with Σ|J|^d = 1; 0 for a single interval."""
    if len(cover) <= 1:
        return 0.0
    logs = np.array([log_abs(c.length) for c in cover])
    if logsumexp(logs) >= 0:
        return 1.0
    return float(brentq(lambda d: logsumexp(d * logs), 0.0, 1.0, xtol=1e-15))


def box_dimension_estimate(
    covers: list[list[CoverInterval]],
    window: int = RenormParams.DIMENSION_WINDOW,
) -> DimensionEstimate:
    """
    Box-counting slopes per depth window plus the cover dimension per depth.

    `covers[n]` is the cover at depth n. Finite depths only give an upper
    trend, never the limiting value.
    """
    counts = [len(c) for c in covers]
    max_logs = [max(log_abs(j.length) for j in c) for c in covers]
    x = -np.array(max_logs)
    y = np.log(np.array(counts, dtype=float))

    slopes = []
    for start in range(max(0, len(covers) - window + 1)):
        xs, ys = x[start : start + window], y[start : start + window]
        if np.ptp(xs) == 0:
            continue
        slopes.append(float(np.polyfit(xs, ys, 1)[0]))

    return DimensionEstimate(
        depths=tuple(range(len(covers))),
        counts=tuple(counts),
        max_lengths=tuple(float(np.exp(v)) for v in max_logs),
        slopes=tuple(slopes),
        cover_dimensions=tuple(cover_dimension(c) for c in covers),
    )
