"""Prize schedules for the four lottery mechanisms.

A game collects an entry fee from each of N participants, the operator keeps
a rake, and the remaining pool P = N * fee * (1 - rake) is paid out by rank
according to a mechanism:

* winner-take-all: rank 1 receives the whole pool;
* top-k linear: the best ceil-ish fraction k of ranks share P with linearly
  falling weights (sums to P);
* top-k exponential: rank j of the paid ranks receives P / 2**j (the
  leftover P / 2**m stays undistributed);
* three bands: rank 1 gets P/3, ranks 2-10 share P/3, ranks 11-50 share the
  rest; the game cannot run with fewer than 50 participants.

Ranks are equally likely ex ante, so a schedule converts to a participant's
prospect set with uniform rank probabilities.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

from prizelab.errors import GameTerminatedError, ParameterError
from prizelab.prospects import Prospect, ProspectSet

THREE_BANDS_MIN_PARTICIPANTS = 50


class MechanismKind(str, Enum):
    WINNER_TAKE_ALL = "wta"
    TOP_K_LINEAR = "topk-linear"
    TOP_K_EXPONENTIAL = "topk-exp"
    THREE_BANDS = "three-bands"

    @property
    def is_top_k(self) -> bool:
        return self in (MechanismKind.TOP_K_LINEAR, MechanismKind.TOP_K_EXPONENTIAL)


@dataclass(frozen=True)
class Mechanism:
    """A prize-schedule rule; top-k kinds carry the paid fraction ``k``."""

    kind: MechanismKind
    k: float | None = None

    def __post_init__(self) -> None:
        kind = MechanismKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind.is_top_k:
            if self.k is None:
                raise ParameterError(f"mechanism {kind.value!r} requires k")
            if not 0.0 < self.k <= 1.0:
                raise ParameterError(f"k must be in (0, 1], got {self.k}")
        elif self.k is not None:
            raise ParameterError(f"mechanism {kind.value!r} does not take k")

    def label(self) -> str:
        """Short human- and CSV-friendly name, e.g. ``topk-linear[k=0.16]``."""
        if self.kind.is_top_k:
            return f"{self.kind.value}[k={self.k:g}]"
        return self.kind.value


@dataclass(frozen=True)
class GameConfig:
    """One game's size and pricing: participants, entry fee, operator rake."""

    n_participants: int
    entry_fee: float = 1.0
    rake: float = 0.1

    def __post_init__(self) -> None:
        if not (isinstance(self.n_participants, int) and self.n_participants >= 1):
            raise ParameterError(
                f"n_participants must be a positive integer, got {self.n_participants}"
            )
        if not self.entry_fee > 0.0:
            raise ParameterError(f"entry_fee must be > 0, got {self.entry_fee}")
        if not 0.0 <= self.rake < 1.0:
            raise ParameterError(f"rake must be in [0, 1), got {self.rake}")


def prize_pool(config: GameConfig) -> float:
    """Total paid out to winners: collected fees less the operator's cut."""
    return config.n_participants * config.entry_fee * (1.0 - config.rake)


def winners_count(k: float, n_participants: int) -> int:
    """Paid ranks for fraction k: round half up, at least 1, at most N."""
    if not 0.0 < k <= 1.0:
        raise ParameterError(f"k must be in (0, 1], got {k}")
    m = math.floor(k * n_participants + 0.5)
    return max(1, min(m, n_participants))


@dataclass(frozen=True)
class PrizeSchedule:
    """Per-rank prizes, best rank first, non-increasing and non-negative."""

    prizes: tuple[float, ...]

    def __post_init__(self) -> None:
        prizes = tuple(self.prizes)
        object.__setattr__(self, "prizes", prizes)
        if not prizes:
            raise ParameterError("a schedule needs at least one rank")
        if prizes[-1] < 0.0:
            raise ParameterError("prizes must be non-negative")
        for a, b in itertools.pairwise(prizes):
            if b > a:
                raise ParameterError("prizes must be non-increasing by rank")

    def __len__(self) -> int:
        return len(self.prizes)


def build_schedule(mechanism: Mechanism, config: GameConfig) -> PrizeSchedule:
    """Construct the full per-rank prize list for a mechanism and game."""
    n = config.n_participants
    pool = prize_pool(config)
    kind = mechanism.kind

    if kind is MechanismKind.WINNER_TAKE_ALL:
        prizes = [pool] + [0.0] * (n - 1)
    elif kind is MechanismKind.TOP_K_LINEAR:
        m = winners_count(mechanism.k, n)
        scale = pool / (m * (m + 1) / 2)
        prizes = [(m - j + 1) * scale for j in range(1, m + 1)]
        prizes += [0.0] * (n - m)
    elif kind is MechanismKind.TOP_K_EXPONENTIAL:
        m = winners_count(mechanism.k, n)
        prizes = [pool * 0.5**j for j in range(1, m + 1)]
        prizes += [0.0] * (n - m)
    elif kind is MechanismKind.THREE_BANDS:
        if n < THREE_BANDS_MIN_PARTICIPANTS:
            raise GameTerminatedError(
                f"three-bands game terminated: {n} participants, "
                f"minimum is {THREE_BANDS_MIN_PARTICIPANTS}"
            )
        prizes = [pool / 3.0] + [pool / 27.0] * 9 + [pool / 120.0] * 40
        prizes += [0.0] * (n - 50)
    else:  # pragma: no cover - enum is exhaustive
        raise ParameterError(f"unknown mechanism kind {kind!r}")

    return PrizeSchedule(tuple(prizes))


def to_prospects(schedule: PrizeSchedule, config: GameConfig) -> ProspectSet:
    """A participant's view of a schedule before ranks are drawn.

    Every rank is equally likely, so ranks sharing the same prize collapse
    into a single outcome whose probability is the group size over N. The
    outcomes stay ordered best rank first.
    """
    n = config.n_participants
    if len(schedule) != n:
        raise ParameterError(
            f"schedule has {len(schedule)} prizes for {n} participants"
        )
    outcomes = []
    for prize, group in itertools.groupby(schedule.prizes):
        count = sum(1 for _ in group)
        outcomes.append(Prospect(prize - config.entry_fee, count / n))
    return ProspectSet(outcomes)
