"""Value functions, probability weighting, and prospect utilities.

Building blocks for evaluating gambles the way people actually do: an
S-shaped value function over gains and losses, inverse-S probability
weighting (Tversky-Kahneman and Prelec forms, plus identity for the
unweighted case), and the utility of a finite set of (profit, probability)
outcomes. Everything here is a pure function of its inputs and safe to call
concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

from prizelab.errors import ParameterError

# Slack allowed when checking that outcome probabilities sum to one.
PROBABILITY_SUM_TOL = 1e-9


def _check_probability(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"probability must be in [0, 1], got {p}")
    return p


@dataclass(frozen=True)
class ValueFunction:
    """Power value function with loss aversion.

    Gains map to ``x ** alpha`` and losses to ``-loss_aversion * (-x) ** alpha``,
    giving a curve that is concave over gains, convex over losses, and steeper
    on the loss side whenever ``loss_aversion > 1``. The defaults are the
    classic median estimates from Tversky and Kahneman's experiments.
    """

    alpha: float = 0.88
    loss_aversion: float = 2.25

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise ParameterError(f"alpha must be in (0, 1], got {self.alpha}")
        if not self.loss_aversion >= 1.0:
            raise ParameterError(
                f"loss_aversion must be >= 1, got {self.loss_aversion}"
            )

    def __call__(self, x: float) -> float:
        if x >= 0:
            return x**self.alpha
        return -self.loss_aversion * (-x) ** self.alpha


@dataclass(frozen=True)
class TverskyKahnemanWeighting:
    """Inverse-S weighting ``p**d / (p**d + (1-p)**d) ** (1/d)``."""

    delta: float = 0.65

    def __post_init__(self) -> None:
        if not 0.0 < self.delta <= 1.0:
            raise ParameterError(f"delta must be in (0, 1], got {self.delta}")

    def __call__(self, p: float) -> float:
        _check_probability(p)
        num = p**self.delta
        return num / (num + (1.0 - p) ** self.delta) ** (1.0 / self.delta)


@dataclass(frozen=True)
class PrelecWeighting:
    """Prelec weighting ``exp(-beta * (-ln p) ** alpha)``.

    The formula is singular at p = 0; the weight there is its continuity
    limit 0.
    """

    alpha: float = 0.65
    beta: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise ParameterError(f"alpha must be in (0, 1], got {self.alpha}")
        if not self.beta > 0.0:
            raise ParameterError(f"beta must be > 0, got {self.beta}")

    def __call__(self, p: float) -> float:
        _check_probability(p)
        if p == 0.0:
            return 0.0
        return math.exp(-self.beta * (-math.log(p)) ** self.alpha)


@dataclass(frozen=True)
class IdentityWeighting:
    """No distortion: w(p) = p, the classical expected-utility weighting."""

    def __call__(self, p: float) -> float:
        return _check_probability(p)


ProbabilityWeighting = Union[
    TverskyKahnemanWeighting, PrelecWeighting, IdentityWeighting
]


@dataclass(frozen=True)
class Prospect:
    """One outcome: a signed profit and the probability of receiving it."""

    profit: float
    probability: float

    def __post_init__(self) -> None:
        _check_probability(self.probability)


@dataclass(frozen=True)
class ProspectSet:
    """The outcomes of a gamble, best first, with probabilities summing to one."""

    outcomes: tuple[Prospect, ...]

    def __init__(self, outcomes: Iterable[Prospect]) -> None:
        object.__setattr__(self, "outcomes", tuple(outcomes))
        if not self.outcomes:
            raise ParameterError("a prospect set needs at least one outcome")
        total = math.fsum(o.probability for o in self.outcomes)
        if abs(total - 1.0) > PROBABILITY_SUM_TOL:
            raise ParameterError(f"outcome probabilities sum to {total}, expected 1")

    def __iter__(self):
        return iter(self.outcomes)

    def __len__(self) -> int:
        return len(self.outcomes)


def cpt_utility(
    prospects: ProspectSet,
    value_fn: ValueFunction,
    weighting: ProbabilityWeighting,
) -> float:
    """Probability-weighted subjective value, one term per stated outcome.

    Each outcome's probability passes through the weighting function
    independently; there is no cumulative rank-dependent transform.
    """
    return math.fsum(
        weighting(o.probability) * value_fn(o.profit) for o in prospects
    )


def eut_utility(prospects: ProspectSet) -> float:
    """Plain expectation of profit (risk-neutral expected utility)."""
    return math.fsum(o.probability * o.profit for o in prospects)
