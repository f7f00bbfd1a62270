"""Shared test helpers: independent oracles and small-state enumerators."""

from __future__ import annotations

import itertools

from chipgame import (
    COLORS,
    Exchange,
    ExchangeScript,
    PieceSet,
    apply_exchange,
    verify_script,
)


def brute_force_legal(state: PieceSet) -> set[Exchange]:
    """Enumerate legal moves from physical pieces, independently of the engine.

    A Rule 1 exchange picks three concrete pieces whose colored members are
    pairwise distinct (jokers fill the remaining colors).  Rule 2 needs three
    dominoes.  Token counts are capped at 3 since no exchange touches more.
    """
    tokens: list[tuple[str, int]] = []
    for color in COLORS:
        for i in range(min(state.chips[color.index], 3)):
            tokens.append((color.name, i))
    for i in range(min(state.jokers, 3)):
        tokens.append(("J", i))
    moves: set[Exchange] = set()
    for combo in itertools.combinations(tokens, 3):
        colored = [kind for kind, _ in combo if kind != "J"]
        if len(colored) != len(set(colored)):
            continue
        moves.add(Exchange.rule1(*(c for c in COLORS if c.name in colored)))
    if state.dominoes >= 3:
        moves.add(Exchange.rule2())
    return moves


def small_states(max_total: int, max_jokers: int | None = None, max_dominoes: int | None = None):
    """All piece sets with at most max_total pieces (chips + jokers + dominoes)."""
    max_jokers = max_total if max_jokers is None else max_jokers
    max_dominoes = max_total if max_dominoes is None else max_dominoes
    for total in range(max_total + 1):
        for a in range(total + 1):
            for b in range(total - a + 1):
                for c in range(total - a - b + 1):
                    rest = total - a - b - c
                    for x in range(min(rest, max_jokers) + 1):
                        d = rest - x
                        if d <= max_dominoes:
                            yield PieceSet(chips=(a, b, c), jokers=x, dominoes=d)


def colored_triples(total: int, canonical: bool = False):
    for a in range(total + 1):
        for b in range(total - a + 1):
            c = total - a - b
            if canonical and not (a >= b >= c):
                continue
            yield (a, b, c)


def assert_replays(script: ExchangeScript, initial: PieceSet | None = None) -> PieceSet:
    """Replay through apply_exchange; returns the final state."""
    if not script.steps:
        assert initial is not None, "empty script needs an explicit initial state"
        return initial
    return verify_script(script, initial)


def simulate_pure_joker_collapse(x: int) -> tuple[int, int, int]:
    """Independent oracle for the joker-collapse counts: greedily apply
    three-joker exchanges until fewer than three jokers remain.

    Returns (exchanges, dominoes, jokers_left).
    """
    state = PieceSet(chips=(0, 0, 0), jokers=x)
    steps = 0
    while state.jokers >= 3:
        state = apply_exchange(state, Exchange.rule1())
        steps += 1
    return steps, state.dominoes, state.jokers
