from fractions import Fraction

import pytest

from src.renorm.induction import (
    RenormState,
    l_matrix,
    mat_mul,
    mat_vec,
    r_matrix,
    rv_run,
    rv_step,
)
from src.renorm.model import ModelMap
from src.utils.errors import BudgetExhaustedError

SIXTEENTH = Fraction(1, 16)


def _model(s: Fraction) -> ModelMap:
    return ModelMap(SIXTEENTH, SIXTEENTH, s, 1 - s)


def test_model_map_branches():
    m = _model(Fraction(1, 3))

    assert m(Fraction(0)) == 1 - SIXTEENTH / 3
    assert m(Fraction(1, 3)) == 0
    assert m.s == Fraction(1, 3)


def test_model_rejects_bad_parameters():
    with pytest.raises(ValueError):
        ModelMap(Fraction(3, 4), SIXTEENTH, Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(ValueError):
        ModelMap(SIXTEENTH, SIXTEENTH, Fraction(0), Fraction(1))


def test_matrices_act_on_lengths():
    assert r_matrix(SIXTEENTH) == ((1, -16), (0, 16))
    assert l_matrix(SIXTEENTH) == ((16, 0), (-16, 1))
    assert mat_mul(r_matrix(SIXTEENTH), ((1, 0), (0, 1))) == r_matrix(SIXTEENTH)
    # R keeps the total length l_A: (l_A − l_B/λ) + l_B/λ.
    assert sum(mat_vec(r_matrix(SIXTEENTH), (1, SIXTEENTH / 2))) == 1


def test_balanced_model_stops_at_once():
    model = _model(Fraction(1, 3))
    state = rv_run(model)

    assert state.word == ""
    assert state.status == "stopped"
    x, y = state.period_two
    assert model(x) == y
    assert model(y) == x


def test_short_left_interval_starts_with_l():
    state = rv_step(RenormState.start(_model(Fraction(1, 40))))

    assert state.word == "L"
    assert state.factors[-1] == (SIXTEENTH**2, SIXTEENTH)
    assert state.origin == Fraction(1, 40)


def test_short_right_interval_starts_with_r():
    state = rv_step(RenormState.start(_model(Fraction(39, 40))))

    assert state.word == "R"
    assert state.factors[-1] == (SIXTEENTH, SIXTEENTH**2)
    assert state.origin == 0


def test_induced_map_is_the_first_return():
    model = _model(Fraction(1, 40))
    state = RenormState.start(model)
    following = rv_step(state)
    new = following.current
    shift = following.origin
    for k in range(1, 10):
        x = shift + Fraction(k, 10) * new.length
        brute, _ = model.first_return(x, shift, shift + new.length)
        assert brute == new(x - shift) + shift


def test_lengths_follow_the_matrix_product():
    model = _model(Fraction(5, 1000))
    state = rv_run(model)

    assert state.status == "stopped"
    assert mat_vec(state.matrix, (model.l_a, model.l_b)) == (
        state.current.l_a,
        state.current.l_b,
    )


def test_budget_exhausted():
    with pytest.raises(BudgetExhaustedError):
        rv_run(_model(Fraction(1, 10**9)), max_steps=1)


def test_stopped_state_is_fixed():
    state = rv_run(_model(Fraction(1, 3)))

    assert rv_step(state) is state


def test_model_as_interval_map_agrees():
    m = _model(Fraction(1, 3))
    as_map = m.as_gaiet()

    for x in (Fraction(0), Fraction(1, 7), Fraction(1, 3), Fraction(5, 6)):
        assert as_map(x) == m(x)
