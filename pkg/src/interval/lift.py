"""
Circle Lifts.
A two-branch T_θ is read on R/Z; its right-continuous lift adds 1 on the
second branch and satisfies T̃(x + 1) = T̃(x) + 1.
"""

from dataclasses import dataclass
import math

from src.interval.gaiet import GaietMap
from src.utils.scalars import Scalar


@dataclass(frozen=True)
class LiftMap:
    """Degree-one lift of a GaietMap on [0, 1]."""

    base: GaietMap
    offsets: tuple[int, ...]

    def step(self, x: Scalar, side: str = "right") -> tuple[Scalar, int]:
        """One step on the circle: new position in [0, 1) and integer displacement."""
        index = self.base.branch_index(x, side)
        y = self.base.branches[index](x)
        whole = math.floor(y)
        return y - whole, self.offsets[index] + whole

    def __call__(self, x: Scalar, side: str = "right") -> Scalar:
        n = math.floor(x)
        r = x - n
        index = self.base.branch_index(r, side)
        return self.base.branches[index](r) + self.offsets[index] + n

    def iterate(self, x: Scalar, n: int, side: str = "right") -> Scalar:
        """T̃^n(x) on the real line."""
        for _ in range(n):
            x = self(x, side)
        return x

    def fill(self, x: Scalar) -> tuple[Scalar, Scalar]:
        """Set-valued extension: the jump at a breakpoint is filled."""
        r = x - math.floor(x)
        if r in self.base.singularities:
            return self(x, side="left"), self(x, side="right")
        value = self(x)
        return value, value


def lift(base: GaietMap) -> LiftMap:
    """Right-continuous lift: +1 on the second branch of a two-branch map."""
    if len(base.branches) == 1:
        return LiftMap(base, (0,))
    if len(base.branches) != 2:
        raise ValueError("only one- or two-branch maps have a circle lift here")
    return LiftMap(base, (0, 1))
