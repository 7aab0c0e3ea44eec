"""Design and comparison of lottery prize mechanisms under prospect-theory
preferences: value and probability-weighting functions, prize schedules for
four mechanism families, and parameter sweeps over game size, fees, and
operator rake.
"""

from prizelab.analysis import (
    DEFAULT_F_VALUES,
    DEFAULT_K_GRID,
    DEFAULT_R_VALUES,
    FrontierRow,
    OptimalKResult,
    SweepGrid,
    UtilityCurve,
    break_even_n,
    operator_profit,
    optimal_k,
    profit_frontier,
    utility_at,
    utility_curve,
)
from prizelab.errors import (
    GameTerminatedError,
    ParameterError,
    PrizelabError,
    UnsupportedMechanismError,
)
from prizelab.mechanisms import (
    THREE_BANDS_MIN_PARTICIPANTS,
    GameConfig,
    Mechanism,
    MechanismKind,
    PrizeSchedule,
    build_schedule,
    prize_pool,
    to_prospects,
    winners_count,
)
from prizelab.prospects import (
    IdentityWeighting,
    PrelecWeighting,
    ProbabilityWeighting,
    Prospect,
    ProspectSet,
    TverskyKahnemanWeighting,
    ValueFunction,
    cpt_utility,
    eut_utility,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_F_VALUES",
    "DEFAULT_K_GRID",
    "DEFAULT_R_VALUES",
    "FrontierRow",
    "GameConfig",
    "GameTerminatedError",
    "IdentityWeighting",
    "Mechanism",
    "MechanismKind",
    "OptimalKResult",
    "ParameterError",
    "PrelecWeighting",
    "PrizeSchedule",
    "PrizelabError",
    "ProbabilityWeighting",
    "Prospect",
    "ProspectSet",
    "SweepGrid",
    "THREE_BANDS_MIN_PARTICIPANTS",
    "TverskyKahnemanWeighting",
    "UnsupportedMechanismError",
    "UtilityCurve",
    "ValueFunction",
    "break_even_n",
    "build_schedule",
    "cpt_utility",
    "eut_utility",
    "operator_profit",
    "optimal_k",
    "prize_pool",
    "profit_frontier",
    "to_prospects",
    "utility_at",
    "utility_curve",
    "winners_count",
]
