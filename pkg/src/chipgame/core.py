"""Value-semantic game state and the deterministic cooperative policy.

The game: a pooled bank of colored chips (three colors), jokers (wildcard
chips) and dominoes.  Two exchange rules:

* Rule 1: three chips covering all three colors, with jokers standing in
  for missing colors, buy one domino plus one joker.
* Rule 2: three dominoes buy seven jokers.

All types here are immutable values and all operations are pure functions,
so they can be shared freely between threads and replayed deterministically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from .errors import IllegalExchange, InvalidConfig, StepBudgetExceeded

__all__ = [
    "Color",
    "COLORS",
    "PieceSet",
    "Exchange",
    "GameConfig",
    "ScriptStep",
    "ExchangeScript",
    "PHASES",
    "apply_exchange",
    "is_legal",
    "legal_exchanges",
    "max_principle_exchange",
    "cooperative_exchange",
    "cooperative_step",
    "run_cooperative",
    "canonicalize",
    "canonical_with_permutation",
    "script_from_exchanges",
    "verify_script",
]


class Color(Enum):
    """One of the three chip colors. All rules are symmetric in the labels."""

    C1 = 0
    C2 = 1
    C3 = 2

    @property
    def index(self) -> int:
        return self.value


COLORS: tuple[Color, Color, Color] = (Color.C1, Color.C2, Color.C3)

# Phase vocabulary for script annotations.
PHASE_OPENING = "opening"
PHASE_COLLAPSE = "collapse"
PHASE_RULE2 = "rule2"
PHASE_MINING = "mining"
PHASE_FINAL = "final"
PHASES = frozenset(
    {PHASE_OPENING, PHASE_COLLAPSE, PHASE_RULE2, PHASE_MINING, PHASE_FINAL}
)


def _check_count(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise InvalidConfig(f"{name} must be a nonnegative integer, got {value!r}")


@dataclass(frozen=True, order=True)
class PieceSet:
    """Pooled holdings: per-color chip counts, jokers and dominoes."""

    chips: tuple[int, int, int]
    jokers: int = 0
    dominoes: int = 0

    def __post_init__(self) -> None:
        if len(self.chips) != 3:
            raise InvalidConfig(f"expected 3 chip counts, got {self.chips!r}")
        object.__setattr__(self, "chips", tuple(self.chips))
        for i, c in enumerate(self.chips):
            _check_count(f"chips[{i}]", c)
        _check_count("jokers", self.jokers)
        _check_count("dominoes", self.dominoes)

    @property
    def colored_chips(self) -> int:
        return sum(self.chips)

    @property
    def total_chips(self) -> int:
        """Chips of any kind, jokers included (dominoes are not chips)."""
        return self.colored_chips + self.jokers

    @property
    def total_pieces(self) -> int:
        return self.total_chips + self.dominoes

    def count(self, color: Color) -> int:
        return self.chips[color.index]

    def represented_colors(self) -> tuple[Color, ...]:
        return tuple(c for c in COLORS if self.chips[c.index] > 0)

    def to_doc(self) -> dict:
        return {
            "chips": list(self.chips),
            "jokers": self.jokers,
            "dominoes": self.dominoes,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "PieceSet":
        try:
            chips = tuple(int(c) for c in doc["chips"])
            jokers = int(doc.get("jokers", 0))
            dominoes = int(doc.get("dominoes", 0))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidConfig(f"malformed piece set document: {doc!r}") from exc
        if len(chips) != 3:
            raise InvalidConfig(f"expected 3 chip counts, got {doc.get('chips')!r}")
        return cls(chips=chips, jokers=jokers, dominoes=dominoes)  # type: ignore[arg-type]

    def __str__(self) -> str:
        a, b, c = self.chips
        return f"({a},{b},{c}) jokers={self.jokers} dominoes={self.dominoes}"


@dataclass(frozen=True)
class Exchange:
    """One Rule 1 instance (which colors plus how many jokers) or Rule 2.

    A Rule 1 exchange always consumes exactly three pieces: one chip of each
    named color plus ``3 - len(colors)`` jokers.  Rule 2 has no parameters.
    """

    rule: int
    colors: tuple[Color, ...] = ()

    def __post_init__(self) -> None:
        if self.rule not in (1, 2):
            raise InvalidConfig(f"rule must be 1 or 2, got {self.rule!r}")
        ordered = tuple(sorted(self.colors, key=lambda c: c.index))
        if len(set(ordered)) != len(ordered) or len(ordered) > 3:
            raise InvalidConfig(f"rule 1 colors must be distinct: {self.colors!r}")
        if self.rule == 2 and ordered:
            raise InvalidConfig("rule 2 takes no colors")
        object.__setattr__(self, "colors", ordered)

    @classmethod
    def rule1(cls, *colors: Color) -> "Exchange":
        return cls(rule=1, colors=tuple(colors))

    @classmethod
    def rule2(cls) -> "Exchange":
        return cls(rule=2)

    @property
    def jokers_used(self) -> int:
        return 3 - len(self.colors) if self.rule == 1 else 0

    @property
    def is_pure_joker(self) -> bool:
        return self.rule == 1 and not self.colors

    def to_doc(self) -> dict:
        if self.rule == 2:
            return {"rule": 2}
        return {
            "rule": 1,
            "colors": [c.name for c in self.colors],
            "jokers": self.jokers_used,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "Exchange":
        try:
            rule = int(doc["rule"])
        except (KeyError, TypeError, ValueError) as exc:
            raise IllegalExchange(f"malformed exchange document: {doc!r}") from exc
        if rule == 2:
            return cls.rule2()
        if rule != 1:
            raise IllegalExchange(f"unknown rule {rule!r}")
        try:
            colors = tuple(Color[name] for name in doc.get("colors", []))
        except KeyError as exc:
            raise IllegalExchange(f"unknown color in {doc!r}") from exc
        ex = cls.rule1(*colors)
        declared = doc.get("jokers")
        if declared is not None and declared != ex.jokers_used:
            raise IllegalExchange(
                f"rule 1 with {len(colors)} colors uses {ex.jokers_used} jokers, "
                f"document says {declared}"
            )
        return ex

    def __str__(self) -> str:
        if self.rule == 2:
            return "Rule2"
        names = "+".join(c.name for c in self.colors) or "-"
        return f"Rule1[{names}+{self.jokers_used}j]"


def apply_exchange(state: PieceSet, exchange: Exchange) -> PieceSet:
    """Apply one exchange, or raise IllegalExchange naming the missing resource."""
    if exchange.rule == 2:
        if state.dominoes < 3:
            raise IllegalExchange(
                f"rule 2 needs 3 dominoes, have {state.dominoes}"
            )
        return PieceSet(
            chips=state.chips,
            jokers=state.jokers + 7,
            dominoes=state.dominoes - 3,
        )
    for color in exchange.colors:
        if state.chips[color.index] < 1:
            raise IllegalExchange(f"no {color.name} chip available")
    if state.jokers < exchange.jokers_used:
        raise IllegalExchange(
            f"needs {exchange.jokers_used} jokers, have {state.jokers}"
        )
    chips = list(state.chips)
    for color in exchange.colors:
        chips[color.index] -= 1
    return PieceSet(
        chips=tuple(chips),  # type: ignore[arg-type]
        jokers=state.jokers - exchange.jokers_used + 1,
        dominoes=state.dominoes + 1,
    )


def is_legal(state: PieceSet, exchange: Exchange) -> bool:
    try:
        apply_exchange(state, exchange)
    except IllegalExchange:
        return False
    return True


def legal_exchanges(state: PieceSet) -> list[Exchange]:
    """Every distinct legal exchange in a fixed, deterministic order.

    Rule 1 variants are keyed by color set only: a single Rule 1 never
    removes two chips of one color.  Ordered fewest-jokers-first, then by
    color indices; Rule 2 last.
    """
    moves: list[Exchange] = []
    present = [c for c in COLORS if state.chips[c.index] > 0]
    for r in (3, 2, 1, 0):
        if state.jokers < 3 - r:
            continue
        for combo in itertools.combinations(present, r):
            moves.append(Exchange.rule1(*combo))
    if state.dominoes >= 3:
        moves.append(Exchange.rule2())
    return moves


def max_principle_exchange(state: PieceSet) -> Optional[Exchange]:
    """The unique fewest-jokers Rule 1 exchange, or None when no Rule 1 is legal.

    With r colors represented, the fewest-jokers exchange spends one chip of
    each represented color plus 3 - r jokers; no legal Rule 1 uses fewer.
    Never returns Rule 2.
    """
    present = state.represented_colors()
    r = min(len(present), 3)
    if state.jokers < 3 - r:
        return None
    return Exchange.rule1(*present[:3])


def cooperative_exchange(state: PieceSet) -> Optional[Exchange]:
    """The group's agreed next exchange, Rule 1 preferred over Rule 2.

    Preference ladder for Rule 1: a full set of the three colors first
    (costs no jokers); otherwise a pure-joker triple whenever three jokers
    are banked, which keeps colored chips in reserve for the moments the
    joker pool runs dry; otherwise the fewest-jokers exchange over the
    represented colors.  Rule 2 fires only when no Rule 1 is possible.
    """
    if all(c > 0 for c in state.chips):
        return Exchange.rule1(*COLORS)
    if state.jokers >= 3:
        return Exchange.rule1()
    ex = max_principle_exchange(state)
    if ex is not None:
        return ex
    if state.dominoes >= 3:
        return Exchange.rule2()
    return None


def cooperative_step(state: PieceSet) -> Optional[tuple[PieceSet, Exchange]]:
    """Apply the cooperative policy once; None means no exchange is possible."""
    exchange = cooperative_exchange(state)
    if exchange is None:
        return None
    return apply_exchange(state, exchange), exchange


@dataclass(frozen=True)
class GameConfig:
    """Player count plus the initial pooled distribution.

    The standard game hands every player two colored chips: no jokers, no
    dominoes, and 2 * players colored chips in total.  Anything else must be
    explicitly allowed.
    """

    players: int
    initial: PieceSet
    allow_nonstandard: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.players, int) or self.players < 1:
            raise InvalidConfig(f"players must be a positive integer, got {self.players!r}")
        if not self.standard and not self.allow_nonstandard:
            raise InvalidConfig(
                f"non-standard initial set for {self.players} players: "
                f"{self.initial} (expected {2 * self.players} colored chips, "
                "no jokers, no dominoes)"
            )

    @property
    def standard(self) -> bool:
        return (
            self.initial.jokers == 0
            and self.initial.dominoes == 0
            and self.initial.colored_chips == 2 * self.players
        )

    def to_doc(self) -> dict:
        return {"players": self.players, "initial": self.initial.to_doc()}

    @classmethod
    def from_doc(cls, doc: dict, allow_nonstandard: bool = True) -> "GameConfig":
        try:
            players = int(doc["players"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidConfig(f"malformed config document: {doc!r}") from exc
        initial = PieceSet.from_doc(doc.get("initial", {}))
        return cls(players=players, initial=initial, allow_nonstandard=allow_nonstandard)


@dataclass(frozen=True)
class ScriptStep:
    before: PieceSet
    exchange: Exchange
    after: PieceSet
    phase: str

    def to_doc(self) -> dict:
        return {
            "before": self.before.to_doc(),
            "exchange": self.exchange.to_doc(),
            "after": self.after.to_doc(),
            "phase": self.phase,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "ScriptStep":
        return cls(
            before=PieceSet.from_doc(doc["before"]),
            exchange=Exchange.from_doc(doc["exchange"]),
            after=PieceSet.from_doc(doc["after"]),
            phase=str(doc["phase"]),
        )


@dataclass(frozen=True)
class ExchangeScript:
    """Ordered, annotated, replayable sequence of exchanges.

    ``terminal`` says which stop condition ended a policy run ("goal" or
    "halt"); plan generators leave it None.  Serialization is the bare step
    array; terminal and cost are derivable.
    """

    steps: tuple[ScriptStep, ...]
    terminal: Optional[str] = None

    @property
    def cost(self) -> int:
        return len(self.steps)

    @property
    def initial(self) -> Optional[PieceSet]:
        return self.steps[0].before if self.steps else None

    @property
    def final(self) -> Optional[PieceSet]:
        return self.steps[-1].after if self.steps else None

    def final_state(self, initial: Optional[PieceSet] = None) -> PieceSet:
        if self.steps:
            return self.steps[-1].after
        if initial is None:
            raise ValueError("empty script has no final state without an initial")
        return initial

    def exchanges(self) -> tuple[Exchange, ...]:
        return tuple(s.exchange for s in self.steps)

    def to_doc(self) -> list[dict]:
        return [s.to_doc() for s in self.steps]

    @classmethod
    def from_doc(cls, doc: Sequence[dict], terminal: Optional[str] = None) -> "ExchangeScript":
        return cls(steps=tuple(ScriptStep.from_doc(d) for d in doc), terminal=terminal)


def verify_script(script: ExchangeScript, initial: Optional[PieceSet] = None) -> PieceSet:
    """Replay a script through apply_exchange, checking chaining; returns the final state."""
    if initial is None:
        if not script.steps:
            raise ValueError("cannot verify an empty script without an initial state")
        initial = script.steps[0].before
    state = initial
    for i, step in enumerate(script.steps):
        if step.before != state:
            raise IllegalExchange(
                f"step {i} expects {step.before}, chain is at {state}"
            )
        state = apply_exchange(state, step.exchange)
        if step.after != state:
            raise IllegalExchange(
                f"step {i} records {step.after}, apply gives {state}"
            )
        if step.phase not in PHASES:
            raise IllegalExchange(f"step {i} has unknown phase {step.phase!r}")
    return state


def annotate_phases(exchanges: Sequence[Exchange]) -> list[str]:
    """Phase tags for an exchange sequence, from its shape alone.

    Before the first Rule 2, colored-consuming exchanges are the opening and
    pure-joker triples are a collapse.  After a Rule 2, pure-joker triples
    are mining and colored-consuming exchanges finish a domino-creation
    block.  A trailing pure-joker run after the last Rule 2 is the final
    collapse rather than mining.
    """
    tags: list[str] = []
    seen_rule2 = False
    for ex in exchanges:
        if ex.rule == 2:
            tags.append(PHASE_RULE2)
            seen_rule2 = True
        elif ex.colors:
            tags.append(PHASE_FINAL if seen_rule2 else PHASE_OPENING)
        else:
            tags.append(PHASE_MINING if seen_rule2 else PHASE_COLLAPSE)
    if seen_rule2:
        last_r2 = max(i for i, t in enumerate(tags) if t == PHASE_RULE2)
        tail = tags[last_r2 + 1 :]
        if tail and all(t == PHASE_MINING for t in tail):
            for i in range(last_r2 + 1, len(tags)):
                tags[i] = PHASE_COLLAPSE
    return tags


def script_from_exchanges(
    initial: PieceSet,
    exchanges: Iterable[Exchange],
    phases: Optional[Sequence[str]] = None,
    terminal: Optional[str] = None,
) -> ExchangeScript:
    """Build a chained script by replaying exchanges from an initial state.

    Phases may be given explicitly (one per exchange) or inferred from the
    sequence shape.
    """
    exchange_list = list(exchanges)
    if phases is None:
        phases = annotate_phases(exchange_list)
    if len(phases) != len(exchange_list):
        raise ValueError("one phase tag per exchange required")
    steps: list[ScriptStep] = []
    state = initial
    for ex, phase in zip(exchange_list, phases):
        after = apply_exchange(state, ex)
        steps.append(ScriptStep(before=state, exchange=ex, after=after, phase=phase))
        state = after
    return ExchangeScript(steps=tuple(steps), terminal=terminal)


DEFAULT_STEP_BUDGET_PER_PLAYER = 50
DEFAULT_STEP_BUDGET_BASE = 100


def default_step_budget(players: int) -> int:
    return DEFAULT_STEP_BUDGET_PER_PLAYER * players + DEFAULT_STEP_BUDGET_BASE


def run_cooperative(config: GameConfig, max_steps: Optional[int] = None) -> ExchangeScript:
    """Run the cooperative policy until the domino goal, a halt, or the budget.

    Stops with terminal "goal" once dominoes reach the player count, and
    with terminal "halt" when no exchange is possible.  Raises
    StepBudgetExceeded if max_steps runs out first; the partial script is
    attached to the exception.
    """
    if max_steps is None:
        max_steps = default_step_budget(config.players)
    if max_steps <= 0:
        raise InvalidConfig(f"max_steps must be positive, got {max_steps}")
    exchanges: list[Exchange] = []
    state = config.initial
    terminal = None
    while True:
        if state.dominoes >= config.players:
            terminal = "goal"
            break
        step = cooperative_step(state)
        if step is None:
            terminal = "halt"
            break
        if len(exchanges) >= max_steps:
            partial = script_from_exchanges(config.initial, exchanges)
            raise StepBudgetExceeded(
                f"no goal or halt within {max_steps} steps", script=partial
            )
        state, exchange = step
        exchanges.append(exchange)
    return script_from_exchanges(config.initial, exchanges, terminal=terminal)


def canonicalize(state: PieceSet) -> PieceSet:
    """Chip counts sorted nonincreasing; jokers and dominoes unchanged. Idempotent."""
    return PieceSet(
        chips=tuple(sorted(state.chips, reverse=True)),  # type: ignore[arg-type]
        jokers=state.jokers,
        dominoes=state.dominoes,
    )


def canonical_with_permutation(state: PieceSet) -> tuple[PieceSet, tuple[int, int, int]]:
    """Canonical form plus the stable permutation that produced it.

    perm[i] is the original color index sitting at canonical position i, so
    an exchange phrased against the canonical state maps back to the
    original by replacing canonical color i with Color(perm[i]).
    """
    order = sorted(range(3), key=lambda i: (-state.chips[i], i))
    chips = tuple(state.chips[i] for i in order)
    return (
        PieceSet(chips=chips, jokers=state.jokers, dominoes=state.dominoes),  # type: ignore[arg-type]
        tuple(order),  # type: ignore[return-value]
    )


def permute_colors(state: PieceSet, perm: Sequence[int]) -> PieceSet:
    """Relabel colors: position i of the result takes the count of color perm[i]."""
    return PieceSet(
        chips=tuple(state.chips[perm[i]] for i in range(3)),  # type: ignore[arg-type]
        jokers=state.jokers,
        dominoes=state.dominoes,
    )


def permute_exchange(exchange: Exchange, perm: Sequence[int]) -> Exchange:
    """Replace each color index i in the exchange with perm[i].

    With perm from canonical_with_permutation(state), this maps an exchange
    phrased against the canonical form back onto the original state.
    """
    if exchange.rule == 2:
        return exchange
    return Exchange.rule1(*(Color(perm[c.index]) for c in exchange.colors))
