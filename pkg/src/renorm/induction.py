"""
Renormalization By First Return.
Each step replaces the map by its first return on one branch domain (R: on A,
L: on B), tracked by a word over {L, R}, the scaling factors and the matrix
M_n with (l_A', l_B') = M_n (l_A, l_B).
"""

from dataclasses import dataclass, field, replace
from typing import Literal

from src.config.settings import RenormParams
from src.renorm.model import ModelMap
from src.utils.errors import BudgetExhaustedError
from src.utils.scalars import Scalar

Matrix = tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]


def mat_mul(left: Matrix, right: Matrix) -> Matrix:
    (a, b), (c, d) = left
    (e, f), (g, h) = right
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat_vec(m: Matrix, v: tuple[Scalar, Scalar]) -> tuple[Scalar, Scalar]:
    return m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]


def r_matrix(lam: Scalar) -> Matrix:
    one = lam / lam
    return ((one, -one / lam), (one - one, one / lam))


def l_matrix(mu: Scalar) -> Matrix:
    one = mu / mu
    return ((one / mu, one - one), (-one / mu, one))


@dataclass(frozen=True)
class RenormState:
    """
    Current model, its origin in the starting coordinates and the trace.

    `factors[i]` are the (λ_i, μ_i) in force before step i; the last entry
    belongs to `current`.
    """

    current: ModelMap
    origin: Scalar
    word: str
    factors: tuple[tuple[Scalar, Scalar], ...]
    matrix: Matrix
    status: Literal["running", "stopped"] = "running"
    period_two: tuple[Scalar, Scalar] | None = field(default=None)

    @classmethod
    def start(cls, model: ModelMap) -> "RenormState":
        one = model.lam / model.lam
        zero = one - one
        return cls(
            current=model,
            origin=zero,
            word="",
            factors=((model.lam, model.mu),),
            matrix=((one, zero), (zero, one)),
        )


def rv_step(state: RenormState) -> RenormState:
    """One induction step, or Stopped with the period-2 orbit."""
    if state.status != "running":
        return state
    m = state.current
    lam, mu, l_a, l_b = m.lam, m.mu, m.l_a, m.l_b

    if l_b < lam * l_a:
        step, letter = r_matrix(lam), "R"
        new_factors = (lam, lam * mu)
        origin = state.origin
    elif l_a < mu * l_b:
        step, letter = l_matrix(mu), "L"
        new_factors = (lam * mu, mu)
        origin = state.origin + l_a
    else:
        x, y = m.period_two_orbit()
        return replace(
            state,
            status="stopped",
            period_two=(state.origin + x, state.origin + y),
        )

    new_a, new_b = mat_vec(step, (l_a, l_b))
    return RenormState(
        current=ModelMap(new_factors[0], new_factors[1], new_a, new_b),
        origin=origin,
        word=state.word + letter,
        factors=state.factors + (new_factors,),
        matrix=mat_mul(step, state.matrix),
    )


def rv_run(model: ModelMap, max_steps: int = RenormParams.MAX_STEPS) -> RenormState:
    """
    Iterates `rv_step` until it stops.

    Raises:
        BudgetExhaustedError: After `max_steps` steps without stopping.
    """
    state = RenormState.start(model)
    while True:
        following = rv_step(state)
        if following.status == "stopped":
            return following
        if len(following.word) > max_steps:
            raise BudgetExhaustedError(state)
        state = following
