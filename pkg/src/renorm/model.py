"""
Two-Interval Model Class.
Maps of I = [0, l_A + l_B] contracting [0, l_A) by λ onto the right end and
[l_A, l_A + l_B] by μ onto the left end.
"""

from dataclasses import dataclass

from src.interval.gaiet import Branch, GaietMap
from src.utils.scalars import Scalar


@dataclass(frozen=True)
class ModelMap:
    lam: Scalar
    mu: Scalar
    l_a: Scalar
    l_b: Scalar

    def __post_init__(self):
        if not (0 < self.lam <= 0.5 and 0 < self.mu <= 0.5):
            raise ValueError(f"factors ({self.lam}, {self.mu}) outside (0, 1/2]")
        if self.l_a <= 0 or self.l_b <= 0:
            raise ValueError(f"lengths ({self.l_a}, {self.l_b}) must be positive")

    @property
    def length(self) -> Scalar:
        return self.l_a + self.l_b

    @property
    def s(self) -> Scalar:
        """Breakpoint of the normalized map."""
        return self.l_a / self.length

    def __call__(self, x: Scalar) -> Scalar:
        if x < self.l_a:
            return self.lam * x + self.length - self.lam * self.l_a
        return self.mu * (x - self.l_a)

    def as_gaiet(self) -> GaietMap:
        zero = self.l_a - self.l_a
        lifted = self.length - self.lam * self.l_a
        return GaietMap(
            (
                Branch(zero, self.l_a, self.lam, lifted),
                Branch(self.l_a, self.length, self.mu, -self.mu * self.l_a),
            )
        )

    def normalized(self) -> "ModelMap":
        """Same map rescaled to [0, 1]."""
        return ModelMap(self.lam, self.mu, self.s, 1 - self.s)

    def first_return(
        self, x: Scalar, lo: Scalar, hi: Scalar, max_iter: int = 10_000
    ) -> tuple[Scalar, int]:
        """
        Brute-force first return to [lo, hi): iterate until the orbit re-enters.
        """
        y = self(x)
        for n in range(1, max_iter + 1):
            if lo <= y < hi:
                return y, n
            y = self(y)
        raise RuntimeError(f"no return to [{lo}, {hi}) within {max_iter} steps")

    def period_two_orbit(self) -> tuple[Scalar, Scalar]:
        """Closed-form 2-cycle x ∈ A, y ∈ B valid when λl_A ≤ l_B ≤ l_A/μ."""
        lam, mu = self.lam, self.mu
        x = mu * (self.l_b - lam * self.l_a) / (1 - lam * mu)
        return x, self(x)
