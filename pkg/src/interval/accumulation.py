"""
Accumulation Sets.
Cluster values of λⁿ/(xₙ − s) along an orbit; they decide which limit circles
the corresponding trajectory of the vector field accumulates on.
"""

from dataclasses import dataclass

from src.config.settings import IntervalParams
from src.interval.attractor import gap_orbit
from src.interval.gaiet import GaietMap
from src.utils.errors import NotApplicableError, OrbitDiesError
from src.utils.logger import log
from src.utils.scalars import Scalar, is_exact


@dataclass(frozen=True)
class AccumulationSet:
    """
    Λ estimate. 0 always belongs to Λ; `zero_observed` says whether the tail
    itself came close to it.
    """

    values: tuple[float, ...]
    counts: tuple[int, ...]
    zero_observed: bool
    infinite: bool
    depth: int
    gap_index: int | None = None
    gap_values: tuple[float, ...] = ()

    @property
    def zero(self) -> bool:
        return True

    def describe(self) -> str:
        parts = ["0"]
        parts.extend(f"{v:.17g}" for v in self.values)
        if self.infinite:
            parts.append("inf")
        return "{" + ", ".join(parts) + "}"


def cluster_values(
    samples: list[float], rtol: float = IntervalParams.CLUSTER_RTOL
) -> list[tuple[float, int]]:
    """Merges sorted samples whose relative gap is within `rtol`."""
    clusters: list[list[float]] = []
    for v in sorted(samples):
        if clusters and abs(v - clusters[-1][-1]) <= rtol * max(
            abs(v), abs(clusters[-1][-1])
        ):
            clusters[-1].append(v)
        else:
            clusters.append([v])
    return [(sum(c) / len(c), len(c)) for c in clusters]


def lambda_accumulation(base: GaietMap, x0: Scalar, depth: int) -> AccumulationSet:
    """
    Λ_{x₀} from the tail n ∈ [depth/2, depth] of λⁿ/(xₙ − s).

    Raises:
        OrbitDiesError: The orbit lands exactly on the breakpoint.
    """
    if len(base.branches) != 2:
        raise NotApplicableError("Λ needs a two-branch map")
    slopes = {b.slope for b in base.branches}
    if len(slopes) != 1:
        raise NotApplicableError("Λ needs equal branch slopes")
    lam = slopes.pop()
    s = base.singularities[0]
    if not is_exact(x0) and depth > IntervalParams.FLOAT_DEPTH_LIMIT:
        log.warning(
            f"⚠️ Float orbit to depth {depth}: values past n≈"
            f"{IntervalParams.FLOAT_DEPTH_LIMIT} are at the rounding floor."
        )

    x = x0
    tail: list[float] = []
    scale = lam**0
    for n in range(depth + 1):
        if x == s:
            raise OrbitDiesError(n)
        if n >= depth // 2:
            tail.append(float(scale / (x - s)))
        x = base(x)
        scale = scale * lam

    zero_observed = any(abs(v) < IntervalParams.LAMBDA_ZERO for v in tail)
    infinite = any(abs(v) > IntervalParams.LAMBDA_INFINITY for v in tail)
    finite = [
        v
        for v in tail
        if IntervalParams.LAMBDA_ZERO <= abs(v) <= IntervalParams.LAMBDA_INFINITY
    ]
    clusters = cluster_values(finite)

    gap_index, gap_values = None, ()
    for k, (a, b) in enumerate(gap_orbit(base, depth)):
        if a < x0 < b:
            gap_index = k
            gap_values = (float(1 / (x0 - a)), float(1 / (x0 - b)))
            break

    return AccumulationSet(
        values=tuple(v for v, _ in clusters),
        counts=tuple(c for _, c in clusters),
        zero_observed=zero_observed,
        infinite=infinite,
        depth=depth,
        gap_index=gap_index,
        gap_values=gap_values,
    )
