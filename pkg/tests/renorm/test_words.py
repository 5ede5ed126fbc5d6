from fractions import Fraction

import pytest

from src.renorm.induction import rv_run
from src.renorm.model import ModelMap
from src.renorm.words import follow, realizable_words, restrict, word_intervals

SIXTEENTH = Fraction(1, 16)


def test_empty_word_stops_in_the_middle():
    info = word_intervals(SIXTEENTH, SIXTEENTH, "")

    assert info.interval == (0, 1)
    assert info.stop == (Fraction(1, 17), Fraction(16, 17))
    assert info.eta == info.eta_upper == 1
    assert info.ratio == Fraction(15, 17)
    assert info.components == (Fraction(1, 17), Fraction(1, 17))


def test_eta_of_l_falls_below_one():
    info = word_intervals(SIXTEENTH, SIXTEENTH, "L")

    assert info.interval == (0, Fraction(1, 17))
    assert info.stop == (Fraction(1, 273), Fraction(16, 273))
    assert info.eta == info.eta_upper == Fraction(16, 17)
    assert info.eta_oriented == 1 + SIXTEENTH


@pytest.mark.parametrize("word", ["", "R", "LL", "RL", "LRR"])
def test_oriented_eta_in_one_two(word):
    info = word_intervals(SIXTEENTH, SIXTEENTH, word)

    assert 1 <= info.eta_oriented <= 2
    assert info.eta_oriented in (info.eta, 1 / info.eta)


def test_float_words_match_exact_at_depth():
    word = "LRLRLR"
    exact = word_intervals(SIXTEENTH, SIXTEENTH, word)
    approx = word_intervals(1 / 16, 1 / 16, word)
    width = float(exact.interval[1] - exact.interval[0])

    pairs = zip(approx.interval + approx.stop, exact.interval + exact.stop, strict=True)
    for got, want in pairs:
        assert got == pytest.approx(float(want), abs=1e-3 * width)
    assert approx.eta == pytest.approx(float(exact.eta), rel=1e-6)


@pytest.mark.parametrize("word", ["", "L", "R", "LR", "RRL", "LRLR"])
def test_stopping_interval_bounds(word):
    info = word_intervals(SIXTEENTH, SIXTEENTH, word)

    assert Fraction(1, 2) <= info.eta <= 2
    assert info.ratio >= info.ratio_lower_bound(Fraction(1, 2), 2)
    assert max(info.components) <= Fraction(1, 2)


def test_every_word_is_realizable_for_small_factors():
    words = realizable_words(SIXTEENTH, SIXTEENTH, 3)

    assert len(words) == 1 + 2 + 4 + 8
    assert words[:3] == ["", "L", "R"]


def test_word_interval_agrees_with_the_induction():
    info = word_intervals(SIXTEENTH, SIXTEENTH, "RL")
    s = (info.stop[0] + info.stop[1]) / 2

    state = rv_run(ModelMap(SIXTEENTH, SIXTEENTH, s, 1 - s))
    assert state.word == "RL"


def test_unknown_letter_rejected():
    with pytest.raises(ValueError):
        follow(SIXTEENTH, SIXTEENTH, "LX")


def test_restrict_affine_constraint():
    assert restrict((Fraction(0), Fraction(1)), Fraction(-1, 2), Fraction(1)) == (
        Fraction(1, 2),
        Fraction(1),
    )
    assert restrict((Fraction(0), Fraction(1)), Fraction(-2), Fraction(1)) is None
    assert restrict((Fraction(0), Fraction(1)), Fraction(0), Fraction(0)) is None
    assert restrict(
        (Fraction(0), Fraction(1)), Fraction(0), Fraction(0), strict=False
    ) == (0, 1)
