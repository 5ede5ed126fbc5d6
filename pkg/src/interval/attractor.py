"""
Attractor Structure.
Forward covers T^n((0,1)∖{s}), gap iterates and the backward orbit of the
breakpoint, whose closure is the Cantor attractor when rot is irrational.
"""

from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Literal

from src.interval.gaiet import GaietMap
from src.utils.errors import GapHitsSingularityError, NotApplicableError
from src.utils.scalars import Scalar

Interval = tuple[Scalar, Scalar]


def _two_branch(base: GaietMap) -> Scalar:
    if len(base.branches) != 2:
        raise NotApplicableError("the cover needs a two-branch map")
    return base.singularities[0]


def limit_set_cover(base: GaietMap, depth: int) -> list[Interval]:
    """
    The depth+1 open intervals of T^depth((lo, hi)∖{s}).

    Raises:
        GapHitsSingularityError: No interval of an intermediate cover contains s.
    """
    s = _two_branch(base)
    intervals: list[Interval] = [(base.lo, base.hi)]
    for k in range(depth):
        pieces: list[Interval] = []
        split = False
        for a, b in intervals:
            if a < s < b:
                pieces.extend([(a, s), (s, b)])
                split = True
            else:
                pieces.append((a, b))
        if not split:
            raise GapHitsSingularityError(k)
        intervals = []
        for a, b in pieces:
            branch = base.branches[base.branch_index((a + b) / 2)]
            intervals.append((branch(a), branch(b)))
        intervals.sort()

    slope = max(b.slope for b in base.branches)
    longest = max(b - a for a, b in intervals)
    assert len(intervals) == depth + 1
    assert longest <= slope**depth * (base.hi - base.lo)
    return intervals


def gap_orbit(base: GaietMap, k: int) -> list[Interval]:
    """
    Gap G = (T(hi), T(lo)) and its iterates up to T^k(G), in the map's own
    coordinates. Stops early when an iterate contains the breakpoint.
    """
    s = _two_branch(base)
    a, b = base.branches[-1](base.hi), base.branches[0](base.lo)
    gaps = [(a, b)]
    for _ in range(k):
        if a < s < b:
            break
        branch = base.branches[base.branch_index((a + b) / 2)]
        a, b = branch(a), branch(b)
        gaps.append((a, b))
    return gaps


def backward_orbit(base: GaietMap, depth: int) -> list[Scalar]:
    """s, T⁻¹(s), T⁻²(s), ... while the preimages exist."""
    chain = [_two_branch(base)]
    while len(chain) <= depth:
        y = base.preimage(chain[-1])
        if y is None:
            break
        chain.append(y)
    return chain


def _distance_to_points(x: Scalar, points: list[Scalar]) -> Scalar:
    k = bisect_left(points, x)
    candidates = [abs(x - points[j]) for j in (k - 1, k) if 0 <= j < len(points)]
    return min(candidates)


def hausdorff_distance(points: list[Scalar], cover: list[Interval]) -> float:
    """Hausdorff distance between a finite set and a union of closed intervals."""
    ordered = sorted(points)
    worst = 0.0
    for p in ordered:
        if not any(a <= p <= b for a, b in cover):
            gap = min(min(abs(p - a), abs(p - b)) for a, b in cover)
            worst = max(worst, float(gap))
    for a, b in cover:
        farthest = [a, b]
        inner = [p for p in ordered if a < p < b]
        farthest.extend((u + v) / 2 for u, v in zip(inner, inner[1:], strict=False))
        if inner:
            farthest.extend([(a + inner[0]) / 2, (inner[-1] + b) / 2])
        else:
            farthest.append((a + b) / 2)
        for x in farthest:
            worst = max(worst, float(_distance_to_points(x, ordered)))
    return worst


@dataclass
class PreimageReport:
    status: Literal["ok", "not_applicable"]
    preimages: list[Scalar]
    distances: dict[int, float] = field(default_factory=dict)
    inside_cover: bool = True

    @property
    def shrinking(self) -> bool:
        values = [self.distances[d] for d in sorted(self.distances)]
        return len(values) > 1 and values[-1] < values[0]


def preimage_closure_check(base: GaietMap, depth: int) -> PreimageReport:
    """
    Compares the backward orbit of s with the forward covers depth by depth.

    A backward orbit shorter than `depth` means s is not recurrent
    (rational plateau); the report is then `not_applicable`.
    """
    chain = backward_orbit(base, depth)
    if len(chain) <= depth:
        return PreimageReport("not_applicable", chain)

    report = PreimageReport("ok", chain)
    for d in range(1, depth + 1):
        try:
            cover = limit_set_cover(base, d)
        except GapHitsSingularityError:
            report.status = "not_applicable"
            return report
        report.distances[d] = hausdorff_distance(chain[: d + 1], cover)
        if not all(any(a <= y <= b for a, b in cover) for y in chain):
            report.inside_cover = False
    return report
