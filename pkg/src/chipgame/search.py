"""Exact minimum-exchange search over the implicit game-state graph.

The state space is infinite (mining grows the joker pool without bound), so
the oracle is branch-and-bound: a proven upper bound from the plan
generators seeds the cost ceiling, which makes bounded uniform-cost search
complete on solvable instances.  States are canonicalized up to color
relabeling; expansion order is fully deterministic so node counts and
witnesses are reproducible across runs and platforms.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

from . import theory
from .core import (
    Exchange,
    ExchangeScript,
    GameConfig,
    PieceSet,
    apply_exchange,
    canonical_with_permutation,
    canonicalize,
    legal_exchanges,
    permute_exchange,
    run_cooperative,
    script_from_exchanges,
)
from .errors import DomainError, InvalidConfig, StateSpaceTooLarge, StepBudgetExceeded

__all__ = [
    "SearchGoal",
    "SearchBudget",
    "SearchResult",
    "MinimalSufficiencyReport",
    "Rule1OnlyReport",
    "min_exchanges",
    "achieves_three_dominoes",
    "verify_minimal_sufficient",
    "rule1_only_enumerate",
]

REACH_DOMINOES = "reach-dominoes"
REACH_SUBSET = "reach-subset"

_StateKey = tuple[int, int, int, int, int]


def _key(state: PieceSet) -> _StateKey:
    return (*state.chips, state.jokers, state.dominoes)


@dataclass(frozen=True)
class SearchGoal:
    """Either a target domino count or a target piece set to contain."""

    kind: str
    target_dominoes: int = 0
    target: Optional[PieceSet] = None

    def __post_init__(self) -> None:
        if self.kind == REACH_DOMINOES:
            if self.target_dominoes < 1:
                raise InvalidConfig(
                    f"domino target must be >= 1, got {self.target_dominoes}"
                )
        elif self.kind == REACH_SUBSET:
            if self.target is None:
                raise InvalidConfig("reach-subset needs a target piece set")
            object.__setattr__(self, "target", canonicalize(self.target))
        else:
            raise InvalidConfig(f"unknown goal kind {self.kind!r}")

    @classmethod
    def dominoes(cls, count: int) -> "SearchGoal":
        return cls(kind=REACH_DOMINOES, target_dominoes=count)

    @classmethod
    def subset(cls, target: PieceSet) -> "SearchGoal":
        return cls(kind=REACH_SUBSET, target=target)

    def satisfied(self, canonical_state: PieceSet) -> bool:
        if self.kind == REACH_DOMINOES:
            return canonical_state.dominoes >= self.target_dominoes
        t = self.target
        assert t is not None
        return (
            all(canonical_state.chips[i] >= t.chips[i] for i in range(3))
            and canonical_state.jokers >= t.jokers
            and canonical_state.dominoes >= t.dominoes
        )

    def heuristic(self, canonical_state: PieceSet) -> Optional[int]:
        """Admissible lower bound on remaining exchanges; None means provably
        unreachable from here."""
        if self.kind == REACH_DOMINOES:
            return max(0, self.target_dominoes - canonical_state.dominoes)
        t = self.target
        assert t is not None
        # Colored chips are never produced, so a chip deficit is final.
        if any(canonical_state.chips[i] < t.chips[i] for i in range(3)):
            return None
        h = max(0, t.dominoes - canonical_state.dominoes)
        joker_deficit = t.jokers - canonical_state.jokers
        if joker_deficit > 0:
            # One Rule 2 adds at most seven jokers.
            h = max(h, -(-joker_deficit // 7))
        return h

    def to_doc(self) -> dict:
        if self.kind == REACH_DOMINOES:
            return {"kind": self.kind, "dominoes": self.target_dominoes}
        assert self.target is not None
        return {"kind": self.kind, "target": self.target.to_doc()}


@dataclass(frozen=True)
class SearchBudget:
    max_cost: int
    max_nodes: int = 2_000_000
    joker_cap: int = 64

    def __post_init__(self) -> None:
        for name in ("max_cost", "max_nodes", "joker_cap"):
            if getattr(self, name) < 1:
                raise InvalidConfig(f"{name} must be positive")

    @classmethod
    def for_instance(cls, initial: PieceSet, goal: SearchGoal) -> "SearchBudget":
        """Budget whose cost ceiling is a proven upper bound when one exists.

        The cooperative policy's own cost is used when it reaches the goal;
        otherwise the explicit-plan bound 3 + 9 * (d* - 3) covers solvable
        colored pools.  Unreachable goals keep a generous finite ceiling; the
        search then exhausts the bounded space and reports unreachable.
        """
        max_cost = _upper_bound(initial, goal)
        return cls(
            max_cost=max_cost,
            joker_cap=initial.total_pieces + 8,
        )

    def to_doc(self) -> dict:
        return {
            "maxCost": self.max_cost,
            "maxNodes": self.max_nodes,
            "jokerCap": self.joker_cap,
        }


def _upper_bound(initial: PieceSet, goal: SearchGoal) -> int:
    fallback = 9 * (goal.target_dominoes if goal.kind == REACH_DOMINOES else 1)
    fallback += initial.total_chips + 16
    if goal.kind != REACH_DOMINOES:
        return fallback
    target = goal.target_dominoes
    try:
        config = GameConfig(
            players=max(1, target), initial=initial, allow_nonstandard=True
        )
        script = run_cooperative(config)
    except StepBudgetExceeded:
        return fallback
    if script.terminal == "goal":
        return max(1, script.cost)
    if initial.jokers == 0 and initial.dominoes == 0 and target >= 3:
        if theory.solvable(initial).solvable:
            return 3 + 9 * (target - 3) if target > 3 else 3
    return fallback


@dataclass(frozen=True)
class SearchResult:
    status: str  # optimal | unreachable-within-budget | budget-exhausted
    cost: Optional[int]
    witness: Optional[ExchangeScript]
    nodes_expanded: int
    frontier_peak: int
    cap_hits: int = 0

    def to_doc(self) -> dict:
        return {
            "status": self.status,
            "cost": self.cost,
            "witness": self.witness.to_doc() if self.witness else None,
            "nodesExpanded": self.nodes_expanded,
            "frontierPeak": self.frontier_peak,
            "capHits": self.cap_hits,
        }


def _dominated(entry: _StateKey, g: int, seen: list[tuple[_StateKey, int]]) -> bool:
    for other, og in seen:
        if og <= g and all(o >= e for o, e in zip(other, entry)):
            return True
    return False


def min_exchanges(
    initial: PieceSet,
    goal: SearchGoal,
    budget: Optional[SearchBudget] = None,
    *,
    use_canonical: bool = True,
    use_dominance: bool = False,
) -> SearchResult:
    """Exact minimum exchange count to a goal, with a replayable witness.

    Uniform-cost search with an admissible heuristic over all legal
    exchanges (not only the cooperative policy's).  status "optimal" means
    the returned cost is the true minimum; budget exhaustion and bounded
    unreachability are reported as statuses, never as wrong answers.
    Ties break on lowest f, then lowest h, then the smallest state key.
    """
    if budget is None:
        budget = SearchBudget.for_instance(initial, goal)

    norm = canonicalize if use_canonical else (lambda s: s)
    start = norm(initial)
    start_key = _key(start)

    h0 = goal.heuristic(start)
    nodes_expanded = 0
    frontier_peak = 0
    cap_hits = 0
    if h0 is None:
        return SearchResult(
            status="unreachable-within-budget",
            cost=None,
            witness=None,
            nodes_expanded=0,
            frontier_peak=0,
        )

    # heap entries: (f, h, state key); parents map key -> (parent key, exchange)
    heap: list[tuple[int, int, _StateKey]] = [(h0, h0, start_key)]
    best_g: dict[_StateKey, int] = {start_key: 0}
    parents: dict[_StateKey, tuple[_StateKey, Exchange]] = {}
    states: dict[_StateKey, PieceSet] = {start_key: start}
    expanded: set[_StateKey] = set()
    dominance_seen: list[tuple[_StateKey, int]] = []

    while heap:
        frontier_peak = max(frontier_peak, len(heap))
        f, h, key = heapq.heappop(heap)
        if key in expanded:
            continue
        state = states[key]
        g = best_g[key]
        if goal.satisfied(state):
            witness = _reconstruct(initial, key, parents, states, use_canonical)
            return SearchResult(
                status="optimal",
                cost=g,
                witness=witness,
                nodes_expanded=nodes_expanded,
                frontier_peak=frontier_peak,
                cap_hits=cap_hits,
            )
        expanded.add(key)
        nodes_expanded += 1
        if nodes_expanded > budget.max_nodes:
            return SearchResult(
                status="budget-exhausted",
                cost=None,
                witness=None,
                nodes_expanded=nodes_expanded,
                frontier_peak=frontier_peak,
                cap_hits=cap_hits,
            )
        if use_dominance:
            dominance_seen.append((key, g))
        for exchange in legal_exchanges(state):
            successor = norm(apply_exchange(state, exchange))
            if successor.jokers > budget.joker_cap:
                cap_hits += 1
                continue
            skey = _key(successor)
            sg = g + 1
            known = best_g.get(skey)
            if known is not None and known <= sg:
                continue
            sh = goal.heuristic(successor)
            if sh is None or sg + sh > budget.max_cost:
                continue
            if use_dominance and _dominated(skey, sg, dominance_seen):
                continue
            best_g[skey] = sg
            states[skey] = successor
            parents[skey] = (key, exchange)
            heapq.heappush(heap, (sg + sh, sh, skey))

    return SearchResult(
        status="unreachable-within-budget",
        cost=None,
        witness=None,
        nodes_expanded=nodes_expanded,
        frontier_peak=frontier_peak,
        cap_hits=cap_hits,
    )


def _reconstruct(
    initial: PieceSet,
    goal_key: _StateKey,
    parents: dict[_StateKey, tuple[_StateKey, Exchange]],
    states: dict[_StateKey, PieceSet],
    use_canonical: bool,
) -> ExchangeScript:
    """Rebuild the witness as exchanges on the actual (unrelabeled) states.

    The search stores exchanges against canonical states; each is mapped
    back through the permutation that canonicalized the concrete state at
    that point of the replay.
    """
    chain: list[Exchange] = []
    key = goal_key
    while key in parents:
        key, exchange = parents[key]
        chain.append(exchange)
    chain.reverse()
    if not use_canonical:
        return script_from_exchanges(initial, chain)
    actual: list[Exchange] = []
    state = initial
    for exchange in chain:
        _, perm = canonical_with_permutation(state)
        mapped = permute_exchange(exchange, perm)
        actual.append(mapped)
        state = apply_exchange(state, mapped)
    return script_from_exchanges(initial, actual)


def achieves_three_dominoes(
    initial: PieceSet, budget: Optional[SearchBudget] = None
) -> bool:
    """True iff a state with three dominoes is reachable from the pool.

    Exact for any pool that starts below three dominoes: Rule 2 needs three
    dominoes, so the pre-goal space is Rule-1-only and finite (each Rule 1
    spends two chips).  The default budget covers that space completely.
    """
    if initial.dominoes >= 3:
        return True
    if budget is None:
        budget = SearchBudget(
            max_cost=max(1, initial.total_chips // 2 + 1),
            joker_cap=initial.total_pieces + 8,
        )
    result = min_exchanges(initial, SearchGoal.dominoes(3), budget)
    return result.status == "optimal"


@dataclass(frozen=True)
class MinimalSufficiencyReport:
    """Exhaustive check that reachability of three dominoes coincides with
    containing one of the two seven-chip sets, over all colored pools up to
    a size bound."""

    max_total_chips: int
    ordered_checked: int
    canonical_checked: int
    minimal_sufficient: tuple[tuple[int, int, int], ...]
    counterexamples: tuple[tuple[int, int, int], ...]

    @property
    def consistent(self) -> bool:
        return not self.counterexamples

    def to_doc(self) -> dict:
        return {
            "maxTotalChips": self.max_total_chips,
            "orderedChecked": self.ordered_checked,
            "canonicalChecked": self.canonical_checked,
            "minimalSufficient": [list(t) for t in self.minimal_sufficient],
            "counterexamples": [list(t) for t in self.counterexamples],
            "consistent": self.consistent,
        }


def verify_minimal_sufficient(max_total_chips: int) -> MinimalSufficiencyReport:
    """Sweep every colored pool with at most max_total_chips chips.

    For each ordered triple (a, b, c), search decides whether three dominoes
    are reachable and the subset test predicts it; disagreements are
    returned as counterexamples.  Minimal sufficient triples are those whose
    every single-chip reduction loses sufficiency.
    """
    if max_total_chips < 0:
        raise DomainError(f"chip bound must be nonnegative, got {max_total_chips}")
    sufficient_cache: dict[tuple[int, int, int], bool] = {}

    def sufficient(canonical_chips: tuple[int, int, int]) -> bool:
        if canonical_chips not in sufficient_cache:
            sufficient_cache[canonical_chips] = achieves_three_dominoes(
                PieceSet(chips=canonical_chips)
            )
        return sufficient_cache[canonical_chips]

    def predicted(canonical_chips: tuple[int, int, int]) -> bool:
        a, b, c = canonical_chips
        return (a >= 3 and b >= 3 and c >= 1) or (a >= 3 and b >= 2 and c >= 2)

    counterexamples: list[tuple[int, int, int]] = []
    ordered_checked = 0
    for total in range(max_total_chips + 1):
        for a in range(total + 1):
            for b in range(total - a + 1):
                c = total - a - b
                ordered_checked += 1
                canonical = tuple(sorted((a, b, c), reverse=True))
                if sufficient(canonical) != predicted(canonical):
                    counterexamples.append((a, b, c))

    minimal: list[tuple[int, int, int]] = []
    for chips, is_sufficient in sorted(sufficient_cache.items(), reverse=True):
        if not is_sufficient:
            continue
        reductions = []
        for i in range(3):
            if chips[i] >= 1:
                reduced = list(chips)
                reduced[i] -= 1
                reductions.append(tuple(sorted(reduced, reverse=True)))
        if all(not sufficient(r) for r in reductions):
            minimal.append(chips)

    return MinimalSufficiencyReport(
        max_total_chips=max_total_chips,
        ordered_checked=ordered_checked,
        canonical_checked=len(
            {tuple(sorted(k, reverse=True)) for k in sufficient_cache}
        ),
        minimal_sufficient=tuple(sorted(minimal, reverse=True)),
        counterexamples=tuple(counterexamples),
    )


@dataclass(frozen=True)
class Rule1OnlyReport:
    """Exhaustive traversal of Rule-1-only play from one pool."""

    initial: PieceSet
    n: int
    nodes: int
    terminals: tuple[PieceSet, ...]
    max_dominoes: int
    violations: tuple[str, ...]

    @property
    def conserved(self) -> bool:
        return not self.violations

    def to_doc(self) -> dict:
        return {
            "initial": self.initial.to_doc(),
            "n": self.n,
            "nodes": self.nodes,
            "terminals": [t.to_doc() for t in self.terminals],
            "maxDominoes": self.max_dominoes,
            "violations": list(self.violations),
            "conserved": self.conserved,
        }


def rule1_only_enumerate(
    initial: PieceSet, max_nodes: int = 250_000
) -> Rule1OnlyReport:
    """Visit every state reachable with Rule 1 alone, deduplicated up to
    color relabeling.

    Returns all terminal canonical states (no Rule 1 possible), the maximum
    domino count, and checks 2d + y = n with y >= 1 (y >= 2 for even n) at
    every node.  Raises StateSpaceTooLarge past the node budget.
    """
    if initial.dominoes != 0:
        raise DomainError("rule-1-only enumeration starts from a domino-free pool")
    n = initial.total_chips
    start = canonicalize(initial)
    frontier = [start]
    seen = {_key(start)}
    terminals: list[PieceSet] = []
    violations: list[str] = []
    max_dominoes = 0
    while frontier:
        state = frontier.pop()
        if len(seen) > max_nodes:
            raise StateSpaceTooLarge(
                f"more than {max_nodes} canonical states reachable from {initial}",
                nodes=len(seen),
            )
        y = state.total_chips
        if 2 * state.dominoes + y != n:
            violations.append(f"2d+y != n at {state}")
        if n >= 1 and y < 1:
            violations.append(f"y < 1 at {state}")
        if n >= 1 and n % 2 == 0 and y < 2:
            violations.append(f"y < 2 with n even at {state}")
        max_dominoes = max(max_dominoes, state.dominoes)
        moves = [ex for ex in legal_exchanges(state) if ex.rule == 1]
        if not moves:
            terminals.append(state)
            continue
        for exchange in moves:
            successor = canonicalize(apply_exchange(state, exchange))
            skey = _key(successor)
            if skey not in seen:
                seen.add(skey)
                frontier.append(successor)
    return Rule1OnlyReport(
        initial=initial,
        n=n,
        nodes=len(seen),
        terminals=tuple(sorted(terminals, key=_key)),
        max_dominoes=max_dominoes,
        violations=tuple(violations),
    )
