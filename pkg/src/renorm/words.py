"""
Parameter Intervals Of Words.
For the normalized model with breakpoint s, the lengths after n steps are
M_n (s, 1 − s): every branch and stopping condition is an affine inequality
in s, so the set I(w) of s following a word and the subset H(w) where the
induction then stops are intervals computed exactly.

Each node keeps its two lengths as affine forms in a local coordinate
t ∈ [0, 1] over its own interval, rescaled to unit size. The conditions
are homogeneous in the lengths, so rescaling leaves them unchanged while
keeping the float backend well conditioned at narrow intervals.
"""

from dataclasses import dataclass

from src.renorm.induction import l_matrix, r_matrix
from src.utils.errors import EmptyWordIntervalError
from src.utils.scalars import Scalar

Interval = tuple[Scalar, Scalar]
Form = tuple[Scalar, Scalar]


@dataclass(frozen=True)
class WordNode:
    """
    Induction state common to all s in `interval`.

    Attributes:
        lam: λ_n.
        mu: μ_n.
        interval: Absolute range of s.
        lengths: (c0, c1) of l_A and l_B as c0 + c1·t, up to a common
            positive factor, with s = lo + t·(hi − lo).
    """

    lam: Scalar
    mu: Scalar
    interval: Interval
    lengths: tuple[Form, Form]

    @classmethod
    def root(cls, lam: Scalar, mu: Scalar) -> "WordNode":
        one = lam / lam
        zero = one - one
        return cls(lam, mu, (zero, one), ((zero, one), (one, -one)))

    def _r_condition(self) -> Form:
        (a0, a1), (b0, b1) = self.lengths
        return self.lam * a0 - b0, self.lam * a1 - b1

    def _l_condition(self) -> Form:
        (a0, a1), (b0, b1) = self.lengths
        return self.mu * b0 - a0, self.mu * b1 - a1

    def _unit(self) -> Interval:
        one = self.lam / self.lam
        return one - one, one

    def _absolute(self, local: Interval) -> Interval:
        lo, hi = self.interval
        t0, t1 = local
        width = hi - lo
        return (lo if t0 == 0 else lo + t0 * width, hi if t1 == 1 else lo + t1 * width)

    def child(self, letter: str) -> "WordNode | None":
        if letter == "R":
            c0, c1 = self._r_condition()
            step, lam, mu = r_matrix(self.lam), self.lam, self.lam * self.mu
        else:
            c0, c1 = self._l_condition()
            step, lam, mu = l_matrix(self.mu), self.lam * self.mu, self.mu
        local = restrict(self._unit(), c0, c1)
        if local is None:
            return None

        t0, t1 = local
        (p, q), (r, u) = step
        (a0, a1), (b0, b1) = self.lengths
        forms = (
            (p * a0 + q * b0, p * a1 + q * b1),
            (r * a0 + u * b0, r * a1 + u * b1),
        )
        # s-range shrinks to [t0, t1] of the parent; re-anchor t there.
        forms = tuple((c0 + c1 * t0, c1 * (t1 - t0)) for c0, c1 in forms)
        return WordNode(lam, mu, self._absolute(local), _rescale(forms))

    def stop_interval(self) -> Interval | None:
        """Sub-interval where neither step applies."""
        c0, c1 = self._r_condition()
        local = restrict(self._unit(), -c0, -c1, strict=False)
        if local is None:
            return None
        c0, c1 = self._l_condition()
        local = restrict(local, -c0, -c1, strict=False)
        return None if local is None else self._absolute(local)


def _rescale(forms: tuple[Form, ...]) -> tuple[Form, Form]:
    scale = max(abs(c) for form in forms for c in form)
    if scale == 0:
        return forms
    return tuple((c0 / scale, c1 / scale) for c0, c1 in forms)


def restrict(
    interval: Interval, c0: Scalar, c1: Scalar, strict: bool = True
) -> Interval | None:
    """Intersects `interval` with {s : c0 + c1·s > 0} (or ≥ 0)."""
    lo, hi = interval
    if c1 > 0:
        lo = max(lo, -c0 / c1)
    elif c1 < 0:
        hi = min(hi, -c0 / c1)
    elif c0 < 0 or (strict and c0 == 0):
        return None
    if lo >= hi:
        return None
    return lo, hi


@dataclass(frozen=True)
class WordIntervals:
    word: str
    interval: Interval
    stop: Interval
    eta: Scalar
    eta_upper: Scalar
    lam_n: Scalar
    mu_n: Scalar

    @property
    def ratio(self) -> Scalar:
        """|H(w)| / |I(w)|."""
        return (self.stop[1] - self.stop[0]) / (self.interval[1] - self.interval[0])

    @property
    def components(self) -> tuple[Scalar, Scalar]:
        """Relative lengths of the two components of I(w) ∖ H(w)."""
        width = self.interval[1] - self.interval[0]
        return (
            (self.stop[0] - self.interval[0]) / width,
            (self.interval[1] - self.stop[1]) / width,
        )

    def ratio_lower_bound(self, eta_min: Scalar = 1, eta_max: Scalar = 2) -> Scalar:
        """1/(1 + η_max λ_n) − 1/(1 + η_min/μ_n)."""
        return 1 / (1 + eta_max * self.lam_n) - 1 / (1 + eta_min / self.mu_n)

    @property
    def eta_oriented(self) -> Scalar:
        """
        η read in the orientation of I(w) where it is at least 1.

        Flipping I(w) exchanges λ_n with μ_n in the normalized form of H(w)
        and sends η to 1/η.
        """
        return self.eta if self.eta >= 1 else 1 / self.eta_upper


def follow(lam: Scalar, mu: Scalar, word: str) -> WordNode:
    node: WordNode | None = WordNode.root(lam, mu)
    for letter in word:
        if letter not in "LR":
            raise ValueError(f"letter {letter!r} not in {{L, R}}")
        node = node.child(letter) if node is not None else None
        if node is None:
            raise EmptyWordIntervalError(word)
    assert node is not None
    return node


def word_intervals(lam: Scalar, mu: Scalar, word: str) -> WordIntervals:
    """
    I(w), H(w) and η(w), with η recovered from both ends of H(w) in the
    normalized form H = [1/(1 + η/μ_n), 1/(1 + ηλ_n)].

    Raises:
        EmptyWordIntervalError: No breakpoint follows `word`.
    """
    node = follow(lam, mu, word)
    stop = node.stop_interval()
    if stop is None:
        raise EmptyWordIntervalError(word)
    lo, hi = node.interval
    width = hi - lo
    h_lo = (stop[0] - lo) / width
    h_hi = (stop[1] - lo) / width
    eta = node.mu * (1 / h_lo - 1)
    eta_upper = (1 / h_hi - 1) / node.lam
    return WordIntervals(word, node.interval, stop, eta, eta_upper, node.lam, node.mu)


def realizable_words(lam: Scalar, mu: Scalar, max_length: int) -> list[str]:
    """All realizable words up to `max_length`, shortest first."""
    words, frontier = [""], [("", WordNode.root(lam, mu))]
    for _ in range(max_length):
        following = []
        for word, node in frontier:
            for letter in "LR":
                child = node.child(letter)
                if child is not None:
                    following.append((word + letter, child))
        words.extend(w for w, _ in following)
        frontier = following
    return words
