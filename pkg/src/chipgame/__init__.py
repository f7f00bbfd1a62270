"""Engine, planner, exact-search oracle and live-session service for the
poker-chips/dominoes survival game."""

from .core import (
    Color,
    COLORS,
    Exchange,
    ExchangeScript,
    GameConfig,
    PieceSet,
    ScriptStep,
    apply_exchange,
    canonicalize,
    cooperative_exchange,
    cooperative_step,
    is_legal,
    legal_exchanges,
    max_principle_exchange,
    run_cooperative,
    script_from_exchanges,
    verify_script,
)
from .errors import (
    DomainError,
    GameError,
    IllegalExchange,
    InvalidConfig,
    NothingToUndo,
    NotSolvable,
    SessionNotRunning,
    StateSpaceTooLarge,
    StepBudgetExceeded,
    TrivialGame,
    UnknownSession,
)
from .search import (
    SearchBudget,
    SearchGoal,
    SearchResult,
    achieves_three_dominoes,
    min_exchanges,
    rule1_only_enumerate,
    verify_minimal_sufficient,
)
from .theory import (
    CostReport,
    MINIMAL_SUFFICIENT_SETS,
    SolvabilityVerdict,
    SufficientSet,
    best_case_cost,
    best_case_distribution,
    collapse_dominoes,
    domino_creation_plan,
    full_set_distribution,
    general_upper_bound,
    joker_collapse_plan,
    joker_mining_plan,
    residual_jokers,
    rule1_construction,
    solvable,
    survival_plan,
    worst_case_cost,
    worst_case_distribution,
)

__version__ = "0.1.0"
