"""Parameter sweeps over mechanisms.

Utility curves versus game size, grid search for the paid fraction that
maximizes average utility, break-even participant counts, and operator
profit tables. Every sweep point is an independent pure evaluation, so
results are deterministic and independent of evaluation order; rows are
always produced in grid order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from prizelab.errors import GameTerminatedError, ParameterError, UnsupportedMechanismError
from prizelab.mechanisms import (
    GameConfig,
    Mechanism,
    MechanismKind,
    build_schedule,
    to_prospects,
)
from prizelab.prospects import ProbabilityWeighting, ValueFunction, cpt_utility

DEFAULT_K_GRID = tuple(i / 100 for i in range(1, 101))
DEFAULT_F_VALUES = (1.0, 10.0, 100.0, 10000.0)
DEFAULT_R_VALUES = tuple(i / 100 for i in range(5, 91, 5))


@dataclass(frozen=True)
class SweepGrid:
    """Grid of game sizes, paid fractions, fees, and rakes to sweep."""

    n_min: int = 1
    n_max: int = 200
    k_grid: tuple[float, ...] = DEFAULT_K_GRID
    f_values: tuple[float, ...] = DEFAULT_F_VALUES
    r_values: tuple[float, ...] = DEFAULT_R_VALUES

    def __post_init__(self) -> None:
        object.__setattr__(self, "k_grid", tuple(self.k_grid))
        object.__setattr__(self, "f_values", tuple(self.f_values))
        object.__setattr__(self, "r_values", tuple(self.r_values))
        if not (isinstance(self.n_min, int) and self.n_min >= 1):
            raise ParameterError(f"n_min must be a positive integer, got {self.n_min}")
        if not (isinstance(self.n_max, int) and self.n_max >= self.n_min):
            raise ParameterError(f"n_max must be an integer >= n_min, got {self.n_max}")
        if not self.k_grid or not all(0.0 < k <= 1.0 for k in self.k_grid):
            raise ParameterError("k_grid must be non-empty with k in (0, 1]")
        if not self.f_values or not all(f > 0.0 for f in self.f_values):
            raise ParameterError("f_values must be non-empty and positive")
        if not self.r_values or not all(0.0 <= r < 1.0 for r in self.r_values):
            raise ParameterError("r_values must be non-empty with r in [0, 1)")

    @property
    def n_values(self) -> range:
        return range(self.n_min, self.n_max + 1)


def utility_at(
    mechanism: Mechanism,
    config: GameConfig,
    value_fn: ValueFunction,
    weighting: ProbabilityWeighting,
) -> float:
    """Prospect-theory utility of one game for one participant."""
    schedule = build_schedule(mechanism, config)
    return cpt_utility(to_prospects(schedule, config), value_fn, weighting)


@dataclass(frozen=True)
class UtilityCurve:
    """Utility per participant count; counts where the game cannot run are absent."""

    points: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        ns = [n for n, _ in self.points]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ParameterError("curve points must have strictly increasing n")


def utility_curve(
    mechanism: Mechanism,
    value_fn: ValueFunction,
    weighting: ProbabilityWeighting,
    fee: float,
    rake: float,
    n_values: Iterable[int],
) -> UtilityCurve:
    """One utility evaluation per participant count, in ascending order."""
    points = []
    for n in n_values:
        config = GameConfig(n, fee, rake)
        try:
            points.append((n, utility_at(mechanism, config, value_fn, weighting)))
        except GameTerminatedError:
            continue
    return UtilityCurve(tuple(points))


@dataclass(frozen=True)
class OptimalKResult:
    """Argmax of the average-utility curve over the paid fraction k."""

    k_star: float
    average_utility: float
    curve: tuple[tuple[float, float], ...]


def optimal_k(
    kind: MechanismKind,
    value_fn: ValueFunction,
    weighting: ProbabilityWeighting,
    fee: float,
    rake: float,
    n_values: Iterable[int],
    k_grid: Sequence[float],
) -> OptimalKResult:
    """Search k_grid for the fraction maximizing mean utility across game sizes.

    Game sizes where the mechanism cannot run are skipped in the average.
    Ties resolve to the smallest k.
    """
    kind = MechanismKind(kind)
    if not kind.is_top_k:
        raise UnsupportedMechanismError(
            f"optimal_k requires a top-k mechanism, got {kind.value!r}"
        )
    if not k_grid:
        raise ParameterError("k_grid must be non-empty")
    ns = list(n_values)
    curve = []
    for k in k_grid:
        mechanism = Mechanism(kind, k=k)
        utilities = []
        for n in ns:
            try:
                utilities.append(
                    utility_at(mechanism, GameConfig(n, fee, rake), value_fn, weighting)
                )
            except GameTerminatedError:
                continue
        curve.append((k, math.fsum(utilities) / len(utilities)))
    k_star, best = curve[0]
    for k, avg in curve[1:]:
        if avg > best:
            k_star, best = k, avg
    return OptimalKResult(k_star=k_star, average_utility=best, curve=tuple(curve))


def break_even_n(
    mechanism: Mechanism,
    value_fn: ValueFunction,
    weighting: ProbabilityWeighting,
    fee: float,
    rake: float,
    n_values: Iterable[int],
) -> int | None:
    """Smallest participant count with non-negative utility, or None."""
    for n in n_values:
        try:
            u = utility_at(mechanism, GameConfig(n, fee, rake), value_fn, weighting)
        except GameTerminatedError:
            continue
        if u >= 0.0:
            return n
    return None


def operator_profit(config: GameConfig) -> float:
    """Operator revenue: the rake share of all collected entry fees."""
    return config.n_participants * config.entry_fee * config.rake


class FrontierRow(NamedTuple):
    n_participants: int
    entry_fee: float
    rake: float
    profit: float
    viable: bool


def profit_frontier(
    mechanism: Mechanism,
    value_fn: ValueFunction,
    weighting: ProbabilityWeighting,
    grid: SweepGrid,
) -> list[FrontierRow]:
    """Operator profit per (N, fee, rake) grid point, with a viability flag.

    A point is viable when participants' utility is non-negative; points
    where the game cannot run are not viable.
    """
    rows = []
    for n in grid.n_values:
        for fee in grid.f_values:
            for rake in grid.r_values:
                config = GameConfig(n, fee, rake)
                try:
                    viable = utility_at(mechanism, config, value_fn, weighting) >= 0.0
                except GameTerminatedError:
                    viable = False
                rows.append(
                    FrontierRow(n, fee, rake, operator_profit(config), viable)
                )
    return rows
