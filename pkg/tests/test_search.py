"""Exact-search oracle tests: optimality, witnesses, budgets, and the
exhaustive verification sweeps at desk scale."""

from __future__ import annotations

import pytest

from chipgame import (
    DomainError,
    PieceSet,
    SearchBudget,
    SearchGoal,
    StateSpaceTooLarge,
    achieves_three_dominoes,
    best_case_distribution,
    collapse_dominoes,
    min_exchanges,
    residual_jokers,
    rule1_only_enumerate,
    verify_minimal_sufficient,
    verify_script,
    worst_case_distribution,
)
from chipgame.errors import InvalidConfig

from helpers import colored_triples, small_states

# Exact minima, frozen from the oracle's first derivation.  Each equals the
# lower bound p + 4k, where k is the least feasible number of Rule 2 calls:
# every exchange adds at most one domino and each Rule 2 consumes three.
GOLDEN_WORST_MINIMA = {4: 8, 5: 9, 6: 10, 7: 11}
GOLDEN_BEST_MINIMA = {6: 10}


class TestMinExchanges:
    def test_single_full_set(self):
        result = min_exchanges(PieceSet(chips=(1, 1, 1)), SearchGoal.dominoes(1))
        assert result.status == "optimal" and result.cost == 1

    def test_sufficient_set_three_moves(self):
        result = min_exchanges(PieceSet(chips=(3, 3, 1)), SearchGoal.dominoes(3))
        assert result.status == "optimal" and result.cost == 3
        verify_script(result.witness)

    def test_worst_case_four_players_is_eight(self):
        result = min_exchanges(PieceSet(chips=(4, 3, 1)), SearchGoal.dominoes(4))
        assert result.status == "optimal"
        assert result.cost == 8
        final = verify_script(result.witness)
        assert final.dominoes == 4

    @pytest.mark.parametrize("p", sorted(GOLDEN_WORST_MINIMA))
    def test_worst_case_golden_minima(self, p):
        result = min_exchanges(worst_case_distribution(p), SearchGoal.dominoes(p))
        assert result.status == "optimal"
        assert result.cost == GOLDEN_WORST_MINIMA[p]
        assert result.cost <= 5 * p - 12
        final = verify_script(result.witness)
        assert final.dominoes == p

    def test_best_case_golden_minima(self):
        result = min_exchanges(best_case_distribution(6), SearchGoal.dominoes(6))
        assert result.status == "optimal"
        assert result.cost == GOLDEN_BEST_MINIMA[6] == 6 + 4

    def test_unreachable_goal(self):
        result = min_exchanges(PieceSet(chips=(2, 2, 2)), SearchGoal.dominoes(3))
        assert result.status == "unreachable-within-budget"
        assert result.cost is None and result.witness is None

    def test_budget_exhaustion_is_a_status(self):
        budget = SearchBudget(max_cost=30, max_nodes=2, joker_cap=40)
        result = min_exchanges(
            worst_case_distribution(6), SearchGoal.dominoes(6), budget
        )
        assert result.status == "budget-exhausted"

    def test_goal_already_satisfied(self):
        state = PieceSet(chips=(0, 0, 0), dominoes=4)
        result = min_exchanges(state, SearchGoal.dominoes(3))
        assert result.cost == 0 and result.witness.cost == 0

    def test_witness_meets_goal_only_at_the_end(self):
        result = min_exchanges(worst_case_distribution(5), SearchGoal.dominoes(5))
        states = [s.after.dominoes for s in result.witness.steps]
        assert states[-1] == 5
        assert all(d < 5 for d in states[:-1])

    def test_cost_never_below_domino_deficit(self):
        for chips in colored_triples(8):
            result = min_exchanges(PieceSet(chips=chips), SearchGoal.dominoes(2))
            if result.status == "optimal":
                assert result.cost >= 2 - 0

    def test_reach_subset_goal(self):
        # two dominoes and a joker out of a (3,3,1) pool
        target = PieceSet(chips=(0, 0, 0), jokers=1, dominoes=2)
        result = min_exchanges(PieceSet(chips=(3, 3, 1)), SearchGoal.subset(target))
        assert result.status == "optimal" and result.cost == 2

    def test_reach_subset_chip_deficit_unreachable(self):
        target = PieceSet(chips=(4, 0, 0))
        result = min_exchanges(PieceSet(chips=(3, 3, 1)), SearchGoal.subset(target))
        assert result.status == "unreachable-within-budget"
        assert result.nodes_expanded == 0  # colored chips are never produced

    def test_goal_validation(self):
        with pytest.raises(InvalidConfig):
            SearchGoal.dominoes(0)
        with pytest.raises(InvalidConfig):
            SearchGoal(kind="reach-subset")

    def test_canonicalization_soundness(self):
        """Costs agree with canonicalization on and off for all small pools."""
        for state in small_states(8, max_dominoes=4):
            for target in (1, 2, 3):
                goal = SearchGoal.dominoes(target)
                on = min_exchanges(state, goal, use_canonical=True)
                off = min_exchanges(state, goal, use_canonical=False)
                assert (on.status, on.cost) == (off.status, off.cost)

    def test_dominance_pruning_soundness(self):
        for state in small_states(8, max_dominoes=4):
            goal = SearchGoal.dominoes(3)
            plain = min_exchanges(state, goal)
            pruned = min_exchanges(state, goal, use_dominance=True)
            assert (plain.status, plain.cost) == (pruned.status, pruned.cost)

    def test_deterministic_node_counts(self):
        a = min_exchanges(worst_case_distribution(6), SearchGoal.dominoes(6))
        b = min_exchanges(worst_case_distribution(6), SearchGoal.dominoes(6))
        assert a.nodes_expanded == b.nodes_expanded
        assert a.witness.to_doc() == b.witness.to_doc()


class TestAchievesThreeDominoes:
    def test_sufficient_sets(self):
        assert achieves_three_dominoes(PieceSet(chips=(3, 2, 2)))
        assert achieves_three_dominoes(PieceSet(chips=(3, 3, 1)))

    def test_insufficient_sets(self):
        assert not achieves_three_dominoes(PieceSet(chips=(2, 2, 2)))
        assert not achieves_three_dominoes(PieceSet(chips=(7, 2, 1)))

    def test_jokers_count_toward_sufficiency(self):
        assert achieves_three_dominoes(PieceSet(chips=(0, 0, 0), jokers=7))
        assert not achieves_three_dominoes(PieceSet(chips=(0, 0, 0), jokers=6))

    def test_existing_dominoes(self):
        assert achieves_three_dominoes(PieceSet(chips=(0, 0, 0), dominoes=3))


class TestVerifyMinimalSufficient:
    def test_twelve_chip_sweep(self):
        report = verify_minimal_sufficient(12)
        assert report.minimal_sufficient == ((3, 3, 1), (3, 2, 2))
        assert report.consistent
        assert report.ordered_checked == 455
        assert report.canonical_checked == 102

    def test_seven_chips_exactly(self):
        report = verify_minimal_sufficient(7)
        assert report.minimal_sufficient == ((3, 3, 1), (3, 2, 2))
        assert all(sum(t) == 7 for t in report.minimal_sufficient)

    def test_below_seven_nothing_is_sufficient(self):
        report = verify_minimal_sufficient(6)
        assert report.minimal_sufficient == ()
        assert report.consistent


class TestRule1OnlyEnumerate:
    def test_near_balanced_pool_reaches_the_cap(self):
        report = rule1_only_enumerate(PieceSet(chips=(6, 5, 5)))
        assert report.max_dominoes == 7  # one short of p = 8 players
        assert report.conserved

    def test_pure_joker_pool_has_unique_terminal(self):
        report = rule1_only_enumerate(PieceSet(chips=(0, 0, 0), jokers=7))
        assert report.max_dominoes == collapse_dominoes(7) == 3
        assert report.terminals == (
            PieceSet(chips=(0, 0, 0), jokers=residual_jokers(7), dominoes=3),
        )

    def test_three_player_pool(self):
        report = rule1_only_enumerate(PieceSet(chips=(2, 2, 2)))
        assert report.max_dominoes == 2
        assert report.conserved

    def test_matches_collapse_formula(self):
        for x in range(1, 21):
            report = rule1_only_enumerate(PieceSet(chips=(0, 0, 0), jokers=x))
            assert report.max_dominoes == collapse_dominoes(x)

    def test_rejects_initial_dominoes(self):
        with pytest.raises(DomainError):
            rule1_only_enumerate(PieceSet(chips=(1, 1, 1), dominoes=1))

    def test_node_budget(self):
        with pytest.raises(StateSpaceTooLarge):
            rule1_only_enumerate(PieceSet(chips=(9, 9, 9)), max_nodes=5)

    def test_terminal_states_have_no_rule1(self):
        from chipgame import legal_exchanges

        report = rule1_only_enumerate(PieceSet(chips=(4, 3, 1)))
        for terminal in report.terminals:
            assert all(ex.rule != 1 for ex in legal_exchanges(terminal))
