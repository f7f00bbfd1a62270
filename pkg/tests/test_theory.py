"""Plan generators, cost formulas and the solvability decision.

Expected counts are cross-checked against an independent simulation oracle
(greedy pure-joker collapse) before being asserted against the closed forms.
"""

from __future__ import annotations

import itertools

import pytest

from chipgame import (
    DomainError,
    GameConfig,
    NotSolvable,
    PieceSet,
    TrivialGame,
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
    run_cooperative,
    solvable,
    survival_plan,
    worst_case_cost,
    worst_case_distribution,
)
from chipgame.core import permute_colors

from helpers import assert_replays, colored_triples, simulate_pure_joker_collapse


class TestJokerCollapseCounts:
    def test_formula_matches_simulation(self):
        """The closed forms equal the greedy simulation for every pool size."""
        for x in range(1, 501):
            steps, dominoes, left = simulate_pure_joker_collapse(x)
            assert collapse_dominoes(x) == steps == dominoes
            assert residual_jokers(x) == left

    def test_known_values(self):
        assert residual_jokers(1) == 1
        assert residual_jokers(9) == 1
        assert residual_jokers(32) == 2
        assert collapse_dominoes(2) == 0
        assert collapse_dominoes(9) == 4
        assert collapse_dominoes(14) == 6  # two chips per player, seven players

    def test_zero_is_out_of_domain(self):
        with pytest.raises(DomainError):
            residual_jokers(0)
        with pytest.raises(DomainError):
            collapse_dominoes(0)
        with pytest.raises(DomainError):
            joker_collapse_plan(0)


class TestJokerCollapsePlan:
    @pytest.mark.parametrize("x,cost,final_d", [(3, 1, 1), (2, 0, 0), (9, 4, 4)])
    def test_examples(self, x, cost, final_d):
        plan = joker_collapse_plan(x)
        assert plan.cost == cost
        final = assert_replays(plan, PieceSet(chips=(0, 0, 0), jokers=x))
        assert final.dominoes == final_d
        assert final.jokers == residual_jokers(x)

    def test_range(self):
        for x in range(1, 501):
            plan = joker_collapse_plan(x)
            assert plan.cost == collapse_dominoes(x)
            final = assert_replays(plan, PieceSet(chips=(0, 0, 0), jokers=x))
            assert final.jokers == residual_jokers(x)
            assert final.dominoes == collapse_dominoes(x)


class TestJokerMining:
    @pytest.mark.parametrize("r", [0, 1, 5])
    def test_four_exchanges_one_joker_gained(self, r):
        plan = joker_mining_plan(r)
        assert plan.cost == 4
        final = assert_replays(plan)
        assert final == PieceSet(chips=(0, 0, 0), jokers=r + 1, dominoes=3)

    def test_intermediate_joker_counts(self):
        plan = joker_mining_plan(2)
        assert [s.after.jokers for s in plan.steps] == [9, 7, 5, 3]

    def test_net_effect_range(self):
        for r in range(0, 51):
            final = assert_replays(joker_mining_plan(r))
            assert final.jokers == r + 1 and final.dominoes == 3

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            joker_mining_plan(-1)


class TestDominoCreation:
    def test_cost_nine_with_one_joker(self):
        plan = domino_creation_plan(1)
        assert plan.cost == 9
        final = assert_replays(plan)
        assert final == PieceSet(chips=(0, 0, 0), jokers=1, dominoes=4)

    def test_cost_thirteen_without_jokers(self):
        plan = domino_creation_plan(0)
        assert plan.cost == 13
        final = assert_replays(plan)
        assert final == PieceSet(chips=(0, 0, 0), jokers=1, dominoes=4)

    def test_first_eight_steps_are_two_mining_rounds(self):
        plan = domino_creation_plan(1)
        expected = (
            joker_mining_plan(1).exchanges() + joker_mining_plan(2).exchanges()
        )
        assert plan.exchanges()[:8] == expected
        # and the chained states agree with replaying those rounds back to back
        mid = assert_replays(joker_mining_plan(1))
        assert plan.steps[3].after == mid
        assert plan.steps[7].after == assert_replays(joker_mining_plan(2))

    def test_domain(self):
        with pytest.raises(DomainError):
            domino_creation_plan(2)


class TestSolvable:
    def test_witness_m(self):
        verdict = solvable(PieceSet(chips=(3, 3, 1)))
        assert verdict.solvable and verdict.witness.id == "M"
        assert verdict.method == "subset-check"

    def test_witness_n(self):
        verdict = solvable(PieceSet(chips=(2, 3, 2)))
        assert verdict.solvable and verdict.witness.id == "N"

    def test_unsolvable_examples(self):
        assert not solvable(PieceSet(chips=(7, 2, 1))).solvable
        assert not solvable(PieceSet(chips=(10, 0, 0))).solvable

    def test_color_permutation_invariance(self):
        for chips in colored_triples(9):
            base = solvable(PieceSet(chips=chips)).solvable
            for perm in itertools.permutations(range(3)):
                mirrored = permute_colors(PieceSet(chips=chips), perm)
                assert solvable(mirrored).solvable == base

    def test_monotone_in_extra_chips(self):
        for chips in colored_triples(8):
            if not solvable(PieceSet(chips=chips)).solvable:
                continue
            for i in range(3):
                more = list(chips)
                more[i] += 1
                assert solvable(PieceSet(chips=tuple(more))).solvable

    def test_nonchip_input_uses_search(self):
        verdict = solvable(PieceSet(chips=(0, 0, 0), jokers=7))
        assert verdict.method == "search"
        assert verdict.solvable  # seven jokers collapse to three dominoes
        verdict = solvable(PieceSet(chips=(0, 0, 0), jokers=6))
        assert not verdict.solvable  # d(6) = 2 dominoes only

    def test_search_agrees_with_subset_on_colored(self):
        from chipgame import achieves_three_dominoes

        for chips in colored_triples(8):
            subset = solvable(PieceSet(chips=chips)).solvable
            assert achieves_three_dominoes(PieceSet(chips=chips)) == subset


class TestSurvivalPlan:
    def test_worst_case_four_players(self):
        config = GameConfig(players=4, initial=PieceSet(chips=(4, 3, 1)))
        plan = survival_plan(config)
        assert plan.cost == 8
        assert assert_replays(plan).dominoes >= 4

    def test_best_case_six_players(self):
        config = GameConfig(players=6, initial=PieceSet(chips=(4, 4, 4)))
        plan = survival_plan(config)
        assert plan.cost == 10

    def test_bare_sufficient_set_opening(self):
        config = GameConfig(
            players=4, initial=PieceSet(chips=(3, 3, 1)), allow_nonstandard=True
        )
        plan = survival_plan(config)
        assert [s.phase for s in plan.steps[:3]] == ["opening"] * 3
        after_opening = plan.steps[2].after
        assert after_opening.dominoes == 3 and after_opening.jokers == 1
        assert assert_replays(plan).dominoes >= 4

    def test_not_solvable(self):
        with pytest.raises(NotSolvable):
            survival_plan(GameConfig(players=5, initial=PieceSet(chips=(7, 2, 1))))

    def test_trivial_player_counts(self):
        with pytest.raises(TrivialGame):
            survival_plan(GameConfig(players=3, initial=PieceSet(chips=(3, 2, 1))))

    def test_solvable_nonstandard_pools(self):
        config = GameConfig(
            players=5,
            initial=PieceSet(chips=(0, 0, 0), jokers=9),
            allow_nonstandard=True,
        )
        plan = survival_plan(config)
        assert assert_replays(plan, config.initial).dominoes >= 5


class TestCostReports:
    def test_worst_case_formula_and_plan_agree(self):
        for p in range(4, 13):
            report = worst_case_cost(p)
            assert report.formula_cost == 5 * p - 12
            assert report.plan_cost == report.formula_cost
            assert report.parameters["q"] == 2 * p - 7

    def test_worst_case_distribution_shape(self):
        assert worst_case_distribution(4) == PieceSet(chips=(4, 3, 1))
        assert worst_case_distribution(48).colored_chips == 96

    def test_worst_case_values(self):
        assert worst_case_cost(4).formula_cost == 8
        assert worst_case_cost(48).formula_cost == 228
        with pytest.raises(DomainError):
            worst_case_cost(3)

    def test_best_case_formula_and_plan_agree(self):
        for p in (6, 9, 12):
            report = best_case_cost(p)
            assert report.formula_cost == p + 4
            assert report.plan_cost == report.formula_cost
            assert report.parameters["m"] == 2 * p // 3

    def test_best_case_values(self):
        assert best_case_cost(6).formula_cost == 10
        assert best_case_cost(48).formula_cost == 52
        with pytest.raises(DomainError):
            best_case_cost(7)
        with pytest.raises(DomainError):
            best_case_distribution(3)

    def test_general_bound(self):
        assert general_upper_bound(6).formula_cost == 14
        assert general_upper_bound(6).parameters["cap"] == 22
        assert general_upper_bound(5).formula_cost == 17
        report7 = general_upper_bound(7)
        assert report7.formula_cost == 23
        assert report7.formula_cost <= 7 + 16

    def test_general_bound_domain(self):
        with pytest.raises(DomainError):
            general_upper_bound(4)  # m = 2 full sets only

    def test_general_plan_within_bound(self):
        for p in range(5, 21):
            if ((2 * p) - (2 * p) % 3) // 3 < 3:
                continue
            report = general_upper_bound(p)
            assert report.plan_cost is not None
            assert report.plan_cost <= report.formula_cost

    def test_full_set_distribution_is_standard(self):
        for p in range(4, 15):
            dist = full_set_distribution(p)
            assert dist.colored_chips == 2 * p


class TestRule1Construction:
    @pytest.mark.parametrize("m,dominoes", [(1, 1), (3, 4), (5, 7)])
    def test_reaches_rule1_maximum(self, m, dominoes):
        plan = rule1_construction(m)
        final = assert_replays(plan, PieceSet(chips=(m + 1, m, m)))
        assert final.dominoes == dominoes == (3 * m - 1) // 2
        assert final.colored_chips == 1 and final.jokers == 1
        assert all(s.exchange.rule == 1 for s in plan.steps)

    def test_cost_equals_domino_count(self):
        for m in (1, 3, 5, 7, 9):
            plan = rule1_construction(m)
            assert plan.cost == (3 * m - 1) // 2

    def test_even_m_rejected(self):
        with pytest.raises(DomainError):
            rule1_construction(4)
        with pytest.raises(DomainError):
            rule1_construction(0)


class TestPolicyReachesEverySolvablePool:
    def test_exhaustive_small_pools(self):
        """Empirical answer to whether the cooperative policy suffices: for
        every colored pool of up to 12 chips, the policy reaches the domino
        goal exactly when the pool is solvable, for 4 and 6 players."""
        for total in range(13):
            for chips in colored_triples(total, canonical=True):
                is_solvable = solvable(PieceSet(chips=chips)).solvable
                for players in (4, 6):
                    config = GameConfig(
                        players=players,
                        initial=PieceSet(chips=chips),
                        allow_nonstandard=True,
                    )
                    script = run_cooperative(config)
                    if is_solvable:
                        assert script.terminal == "goal", (chips, players)
                    else:
                        assert script.terminal == "halt", (chips, players)
                        assert script.final is None or script.final.dominoes < 3


class TestWorstCasePolicyTrace:
    def test_policy_reproduces_plan_block_structure(self):
        """On the least favorable pool, the cooperative run is the published
        plan: 3 opening exchanges, then five-exchange blocks each netting one
        domino and spending one reserve chip."""
        p = 7
        script = run_cooperative(GameConfig(players=p, initial=worst_case_distribution(p)))
        assert script.cost == 5 * p - 12
        rules = [s.exchange.rule for s in script.steps]
        assert rules[:3] == [1, 1, 1]
        for block in range(p - 3):
            chunk = script.steps[3 + 5 * block : 8 + 5 * block]
            assert [s.exchange.rule for s in chunk] == [2, 1, 1, 1, 1]
            assert chunk[-1].after.dominoes == 4 + block
