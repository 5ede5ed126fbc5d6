from fractions import Fraction

import pytest

from src.interval.attractor import (
    PreimageReport,
    backward_orbit,
    gap_orbit,
    hausdorff_distance,
    limit_set_cover,
    preimage_closure_check,
)
from src.interval.gaiet import t_theta_from_tan
from src.renorm.model import ModelMap
from src.renorm.words import follow
from src.utils.errors import GapHitsSingularityError, NotApplicableError


@pytest.fixture
def plateau_half():
    return t_theta_from_tan(Fraction(7, 10))


def test_first_cover_is_the_image(plateau_half):
    cover = limit_set_cover(plateau_half, 1)

    assert cover == [
        (Fraction(3, 16), Fraction(9, 40)),
        (Fraction(71, 80), Fraction(73, 80)),
    ]


def test_cover_stops_when_the_gap_swallows_the_breakpoint(plateau_half):
    with pytest.raises(GapHitsSingularityError) as err:
        limit_set_cover(plateau_half, 2)
    assert err.value.depth == 1


def test_gap_orbit_stops_at_the_breakpoint(plateau_half):
    assert gap_orbit(plateau_half, 5) == [(Fraction(9, 40), Fraction(71, 80))]


def test_breakpoint_without_preimage_is_not_recurrent(plateau_half):
    assert backward_orbit(plateau_half, 4) == [Fraction(2, 5)]
    assert preimage_closure_check(plateau_half, 3).status == "not_applicable"


def test_one_branch_map_has_no_cover():
    with pytest.raises(NotApplicableError):
        limit_set_cover(t_theta_from_tan(Fraction(1, 4)), 1)


def test_hausdorff_distance():
    cover = [(0.0, 1.0), (3.0, 4.0)]

    assert hausdorff_distance([0.0, 1.0, 3.0, 4.0], cover) == pytest.approx(0.5)
    assert hausdorff_distance([0.5, 3.5], cover) == pytest.approx(0.5)
    assert hausdorff_distance([2.0], [(2.0, 2.0)]) == 0.0


def test_preimage_report_shrinking():
    report = PreimageReport("ok", [], distances={2: 0.1, 1: 0.4, 3: 0.05})

    assert report.shrinking
    assert not PreimageReport("ok", [], distances={1: 0.1}).shrinking


@pytest.fixture
def cantor_map():
    sixteenth = Fraction(1, 16)
    lo, hi = follow(sixteenth, sixteenth, "LR" * 8).interval
    s = (lo + hi) / 2
    return ModelMap(sixteenth, sixteenth, s, 1 - s).as_gaiet()


def test_preimages_fill_the_cover_when_the_breakpoint_recurs(cantor_map):
    report = preimage_closure_check(cantor_map, 10)

    assert report.status == "ok"
    assert len(report.preimages) == 11
    assert report.inside_cover
    assert report.distances[10] <= 16.0**-8
    assert report.shrinking
