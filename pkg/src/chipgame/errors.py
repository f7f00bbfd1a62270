"""Exception hierarchy shared by the engine, planner, search and service layers.

Every error carries a stable ``code`` string; the HTTP service and the CLI
map codes to status codes / exit codes without inspecting messages.
"""

from __future__ import annotations


class GameError(Exception):
    """Base class for all domain errors."""

    code = "GameError"

    def to_doc(self) -> dict:
        return {"code": self.code, "message": str(self)}


class IllegalExchange(GameError):
    """An exchange whose preconditions are not met by the current state."""

    code = "IllegalExchange"


class DomainError(GameError):
    """An argument outside the domain of a closed-form operation."""

    code = "DomainError"


class InvalidConfig(GameError):
    """A game configuration that violates its invariants."""

    code = "InvalidConfig"


class NotSolvable(GameError):
    """Planning was requested for an initial set that cannot survive."""

    code = "NotSolvable"


class TrivialGame(GameError):
    """Survival is impossible for this player count regardless of chips."""

    code = "TrivialGame"


class StepBudgetExceeded(GameError):
    """The simulation step budget ran out before a stop condition fired."""

    code = "StepBudgetExceeded"

    def __init__(self, message: str, script=None):
        super().__init__(message)
        self.script = script


class StateSpaceTooLarge(GameError):
    """An exhaustive traversal exceeded its node budget."""

    code = "StateSpaceTooLarge"

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class UnknownSession(GameError):
    code = "UnknownSession"


class NothingToUndo(GameError):
    code = "NothingToUndo"


class SessionNotRunning(GameError):
    code = "SessionNotRunning"
