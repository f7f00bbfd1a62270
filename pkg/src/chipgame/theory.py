"""Closed-form counts, verified plan generators, and the solvability decision.

Every plan generator returns an ExchangeScript built by replaying real
exchanges through the engine, so a returned plan is a proof by construction:
if it came back, it is legal and ends where claimed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import (
    COLORS,
    Exchange,
    ExchangeScript,
    GameConfig,
    PHASE_COLLAPSE,
    PHASE_FINAL,
    PHASE_MINING,
    PHASE_OPENING,
    PHASE_RULE2,
    PieceSet,
    run_cooperative,
    script_from_exchanges,
)
from .errors import DomainError, NotSolvable, StepBudgetExceeded, TrivialGame

__all__ = [
    "SufficientSet",
    "MINIMAL_SUFFICIENT_SETS",
    "SolvabilityVerdict",
    "CostReport",
    "residual_jokers",
    "collapse_dominoes",
    "joker_collapse_plan",
    "joker_mining_plan",
    "domino_creation_plan",
    "solvable",
    "survival_plan",
    "worst_case_cost",
    "best_case_cost",
    "general_upper_bound",
    "rule1_construction",
    "worst_case_distribution",
    "best_case_distribution",
    "full_set_distribution",
]


@dataclass(frozen=True)
class SufficientSet:
    """A minimal chip set from which three dominoes can be reached."""

    id: str
    counts: tuple[int, int, int]

    def to_doc(self) -> dict:
        return {"id": self.id, "counts": list(self.counts)}


# Exactly two minimal sufficient sets exist, both of seven chips, up to
# color relabeling; the exact-search module re-derives this exhaustively.
SUFFICIENT_SET_M = SufficientSet(id="M", counts=(3, 3, 1))
SUFFICIENT_SET_N = SufficientSet(id="N", counts=(3, 2, 2))
MINIMAL_SUFFICIENT_SETS: tuple[SufficientSet, SufficientSet] = (
    SUFFICIENT_SET_M,
    SUFFICIENT_SET_N,
)


@dataclass(frozen=True)
class SolvabilityVerdict:
    solvable: bool
    witness: Optional[SufficientSet] = None
    method: str = "subset-check"

    def to_doc(self) -> dict:
        return {
            "solvable": self.solvable,
            "witness": self.witness.id if self.witness else None,
            "method": self.method,
        }


@dataclass(frozen=True)
class CostReport:
    """A formula cost next to the cost of an actually replayed plan.

    For the worst and best scenarios the two must agree exactly; drift
    between theory and engine shows up here before anywhere else.
    """

    players: int
    scenario: str
    formula_cost: int
    plan_cost: Optional[int] = None
    parameters: dict = field(default_factory=dict)

    def to_doc(self) -> dict:
        return {
            "players": self.players,
            "scenario": self.scenario,
            "formulaCost": self.formula_cost,
            "planCost": self.plan_cost,
            "parameters": dict(self.parameters),
        }


def residual_jokers(x: int) -> int:
    """Jokers left after collapsing a pure-joker pool: 1 when x is odd, 2 when even."""
    if not isinstance(x, int) or x < 1:
        raise DomainError(f"joker count must be a positive integer, got {x!r}")
    return 1 if x % 2 else 2


def collapse_dominoes(x: int) -> int:
    """Dominoes produced by fully collapsing x jokers with Rule 1 alone."""
    return (x - residual_jokers(x)) // 2


def joker_collapse_plan(x: int) -> ExchangeScript:
    """Rule-1-only script collapsing x jokers into dominoes.

    Exactly collapse_dominoes(x) steps; ends with residual_jokers(x) jokers.
    """
    count = collapse_dominoes(x)
    return script_from_exchanges(
        PieceSet(chips=(0, 0, 0), jokers=x),
        [Exchange.rule1()] * count,
        phases=[PHASE_COLLAPSE] * count,
    )


def joker_mining_plan(r: int) -> ExchangeScript:
    """Four exchanges that turn three dominoes plus r jokers into the same
    three dominoes plus r + 1 jokers.

    One Rule 2 followed by three pure-joker Rule 1s; the joker count passes
    through r + 7, r + 5, r + 3 and lands on r + 1.
    """
    if not isinstance(r, int) or r < 0:
        raise DomainError(f"joker count must be a nonnegative integer, got {r!r}")
    return script_from_exchanges(
        PieceSet(chips=(0, 0, 0), jokers=r, dominoes=3),
        [Exchange.rule2()] + [Exchange.rule1()] * 3,
        phases=[PHASE_RULE2] + [PHASE_MINING] * 3,
    )


def domino_creation_plan(r: int) -> ExchangeScript:
    """Turn three dominoes plus r jokers into four dominoes plus one joker.

    Nine exchanges for r = 1 (two mining rounds then one Rule 1), thirteen
    for r = 0 (three mining rounds then one Rule 1).
    """
    if r not in (0, 1):
        raise DomainError(f"domino creation is defined for 0 or 1 jokers, got {r!r}")
    rounds = 2 if r == 1 else 3
    exchanges: list[Exchange] = []
    phases: list[str] = []
    for _ in range(rounds):
        exchanges += [Exchange.rule2()] + [Exchange.rule1()] * 3
        phases += [PHASE_RULE2] + [PHASE_MINING] * 3
    exchanges.append(Exchange.rule1())
    phases.append(PHASE_FINAL)
    return script_from_exchanges(
        PieceSet(chips=(0, 0, 0), jokers=r, dominoes=3), exchanges, phases=phases
    )


def _subset_witness(chips: tuple[int, int, int]) -> Optional[SufficientSet]:
    a, b, c = sorted(chips, reverse=True)
    for candidate in MINIMAL_SUFFICIENT_SETS:
        ca, cb, cc = candidate.counts
        if a >= ca and b >= cb and c >= cc:
            return candidate
    return None


def solvable(initial: PieceSet) -> SolvabilityVerdict:
    """Decide whether the pool can ever reach three dominoes (hence any goal).

    Colored-only pools are decided by the two-set subset test.  Pools that
    already hold jokers or dominoes fall outside that test's scope and are
    decided by exhaustive reachability search instead.
    """
    if initial.jokers == 0 and initial.dominoes == 0:
        witness = _subset_witness(initial.chips)
        return SolvabilityVerdict(
            solvable=witness is not None, witness=witness, method="subset-check"
        )
    from .search import achieves_three_dominoes  # imported here: search depends on theory

    return SolvabilityVerdict(
        solvable=achieves_three_dominoes(initial), witness=None, method="search"
    )


def _opening_exchanges(state: PieceSet, witness: SufficientSet) -> list[Exchange]:
    """Three Rule 1 exchanges converting a located sufficient set into three
    dominoes and a joker, leaving any surplus chips untouched."""
    order = sorted(COLORS, key=lambda col: (-state.chips[col.index], col.index))
    c1, c2, c3 = order
    full = Exchange.rule1(c1, c2, c3)
    if witness.id == "M":
        pair = Exchange.rule1(c1, c2)
        return [full, pair, pair]
    return [full, full, Exchange.rule1(c1)]


def survival_plan(config: GameConfig) -> ExchangeScript:
    """A verified script from the initial pool to at least one domino per player.

    Prefers the cooperative policy, whose run reproduces the published
    worst- and best-case exchange counts.  If the policy stalls on an exotic
    yet solvable pool, falls back to the explicit composition: three opening
    exchanges onto a sufficient subset, then repeated domino creation.
    """
    if config.players <= 3:
        raise TrivialGame(
            f"games with {config.players} players cannot reach one domino each"
        )
    verdict = solvable(config.initial)
    if not verdict.solvable:
        raise NotSolvable(f"initial set {config.initial} cannot reach three dominoes")
    try:
        script = run_cooperative(config)
        if script.terminal == "goal":
            return script
    except StepBudgetExceeded:
        pass

    from .core import apply_exchange, cooperative_step, default_step_budget

    exchanges: list[Exchange] = []
    state = config.initial
    if state.dominoes < 3:
        if verdict.witness is None:
            raise NotSolvable(
                f"no explicit opening is known for {config.initial}; "
                "the cooperative policy also failed"
            )
        for ex in _opening_exchanges(state, verdict.witness):
            state = apply_exchange(state, ex)
            exchanges.append(ex)
    # From three dominoes the cooperative grind is exactly repeated domino
    # creation; the budget guard protects against pathological inputs.
    budget = default_step_budget(config.players) + 13 * config.players
    while state.dominoes < config.players:
        step = cooperative_step(state)
        if step is None:
            raise NotSolvable(f"stuck at {state} before reaching the goal")
        if len(exchanges) >= budget:
            raise StepBudgetExceeded(
                f"fallback plan exceeded {budget} steps",
                script=script_from_exchanges(config.initial, exchanges),
            )
        state, ex = step
        exchanges.append(ex)
    return script_from_exchanges(config.initial, exchanges, terminal="goal")


def worst_case_distribution(p: int) -> PieceSet:
    """The least favorable standard pool: a (3,3,1) sufficient set plus the
    remaining 2p - 7 chips all on the most frequent color."""
    if p < 4:
        raise DomainError(f"the game is trivial below 4 players, got {p}")
    q = 2 * p - 7
    return PieceSet(chips=(3 + q, 3, 1))


def best_case_distribution(p: int) -> PieceSet:
    """The most favorable standard pool: the maximum number of full sets."""
    if p < 6 or (2 * p) % 3 != 0:
        raise DomainError(
            f"a pure full-set pool needs 2p divisible by 3 and p >= 6, got p={p}"
        )
    m = 2 * p // 3
    return PieceSet(chips=(m, m, m))


def full_set_distribution(p: int) -> PieceSet:
    """A standard pool with as many full sets as 2p chips allow; the r = 2p mod 3
    leftover chips are spread over distinct colors."""
    if p < 1:
        raise DomainError(f"players must be positive, got {p}")
    r = (2 * p) % 3
    m = (2 * p - r) // 3
    chips = [m, m, m]
    for i in range(r):
        chips[i] += 1
    return PieceSet(chips=tuple(chips))  # type: ignore[arg-type]


def worst_case_cost(p: int) -> CostReport:
    """Exchange count for the least favorable pool: 5p - 12.

    plan_cost replays the cooperative policy on that pool; the report makes
    any drift from the formula visible.
    """
    if p < 4:
        raise DomainError(f"the cost formula needs p >= 4, got {p}")
    script = run_cooperative(
        GameConfig(players=p, initial=worst_case_distribution(p))
    )
    return CostReport(
        players=p,
        scenario="worst",
        formula_cost=5 * p - 12,
        plan_cost=script.cost if script.terminal == "goal" else None,
        parameters={"q": 2 * p - 7},
    )


def best_case_cost(p: int) -> CostReport:
    """Exchange count for the full-set pool: p + 4 (p a multiple-of-3 game, p >= 6)."""
    initial = best_case_distribution(p)
    script = run_cooperative(GameConfig(players=p, initial=initial))
    return CostReport(
        players=p,
        scenario="best",
        formula_cost=p + 4,
        plan_cost=script.cost if script.terminal == "goal" else None,
        parameters={"m": 2 * p // 3},
    )


def general_upper_bound(p: int) -> CostReport:
    """Upper bound p + 4r + 8 (capped at p + 16) for pools holding the maximum
    number of full sets, where 2p = 3m + r with m >= 3."""
    r = (2 * p) % 3
    m = (2 * p - r) // 3
    if m < 3:
        raise DomainError(f"the bound needs m >= 3 full sets, got m={m} for p={p}")
    script = run_cooperative(GameConfig(players=p, initial=full_set_distribution(p)))
    return CostReport(
        players=p,
        scenario="general",
        formula_cost=p + 4 * r + 8,
        plan_cost=script.cost if script.terminal == "goal" else None,
        parameters={"m": m, "r": r, "cap": p + 16},
    )


def rule1_construction(m: int) -> ExchangeScript:
    """Rule-1-only script from an (m+1, m, m) pool (m odd) to the Rule-1 maximum.

    m full-set exchanges, then a pure-joker collapse of the m banked jokers:
    ends with (3m - 1) / 2 dominoes, one colored chip and one joker, which
    is one domino short of the player count p = (3m + 1) / 2.
    """
    if not isinstance(m, int) or m < 1 or m % 2 == 0:
        raise DomainError(f"the construction needs an odd m >= 1, got {m!r}")
    full = Exchange.rule1(*COLORS)
    collapse_steps = collapse_dominoes(m)
    exchanges = [full] * m + [Exchange.rule1()] * collapse_steps
    phases = [PHASE_OPENING] * m + [PHASE_COLLAPSE] * collapse_steps
    return script_from_exchanges(
        PieceSet(chips=(m + 1, m, m)), exchanges, phases=phases
    )
