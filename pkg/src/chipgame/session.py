"""Live-session tracking for a facilitator running a real game.

Sessions are pooled-state ledgers: the facilitator records exchanges as the
bank sees them, can undo mistakes, and can ask for the recommended next
exchange.  Each session persists as one JSON document written atomically
(write to a temp file, then rename), so a crash never leaves a torn file
and a failed mutation leaves the document byte-identical.
"""

from __future__ import annotations

import json
import os
import secrets
import tempfile
import threading
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from .core import (
    Exchange,
    ExchangeScript,
    GameConfig,
    PieceSet,
    apply_exchange,
    cooperative_exchange,
    legal_exchanges,
    run_cooperative,
)
from .errors import (
    InvalidConfig,
    NothingToUndo,
    SessionNotRunning,
    StepBudgetExceeded,
    UnknownSession,
)
from .theory import (
    MINIMAL_SUFFICIENT_SETS,
    SolvabilityVerdict,
    solvable,
    survival_plan,
)

__all__ = ["Session", "Suggestion", "SessionStore"]

STATUS_RUNNING = "running"
STATUS_SURVIVED = "survived"
STATUS_STUCK = "stuck"


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class Suggestion:
    """The recommended next exchange, with its phase and the replanned cost."""

    exchange: Optional[Exchange]
    rationale: Optional[str]
    remaining_plan_cost: Optional[int]

    def to_doc(self) -> dict:
        return {
            "exchange": self.exchange.to_doc() if self.exchange else None,
            "rationale": self.rationale,
            "remainingPlanCost": self.remaining_plan_cost,
        }


@dataclass(frozen=True)
class Session:
    """One live game: configuration, current pooled state, and history.

    ``current`` is always the fold of the history over apply from the
    configured initial set; that identity is re-checked whenever a session
    document is loaded from disk.
    """

    id: str
    config: GameConfig
    current: PieceSet
    history: tuple[tuple[Exchange, str], ...]
    status: str
    verdict: SolvabilityVerdict
    deadline: Optional[str] = None
    plan_cache: Optional[ExchangeScript] = None

    @property
    def trivial(self) -> bool:
        return self.config.players <= 3

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "config": self.config.to_doc(),
            "current": self.current.to_doc(),
            "history": [
                {"exchange": ex.to_doc(), "at": at} for ex, at in self.history
            ],
            "status": self.status,
            "verdict": self.verdict.to_doc(),
            "trivial": self.trivial,
            "deadline": self.deadline,
            "planCache": self.plan_cache.to_doc() if self.plan_cache else None,
        }


def _compute_status(current: PieceSet, players: int) -> str:
    if current.dominoes >= players:
        return STATUS_SURVIVED
    if not legal_exchanges(current):
        return STATUS_STUCK
    return STATUS_RUNNING


def _verdict_from_doc(doc: dict) -> SolvabilityVerdict:
    witness = None
    for candidate in MINIMAL_SUFFICIENT_SETS:
        if doc.get("witness") == candidate.id:
            witness = candidate
    return SolvabilityVerdict(
        solvable=bool(doc["solvable"]),
        witness=witness,
        method=str(doc.get("method", "subset-check")),
    )


class SessionStore:
    """Disk-backed session registry; one JSON document per session.

    Mutations on a session are serialized by a per-session lock; reads take
    the same lock briefly, so they always observe a consistent snapshot.
    """

    def __init__(self, data_dir: Path | str):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def _lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(session_id, threading.Lock())

    def _path(self, session_id: str) -> Path:
        if not session_id.replace("-", "").isalnum():
            raise UnknownSession(f"no session {session_id!r}")
        return self.data_dir / f"{session_id}.json"

    def _save(self, session: Session) -> None:
        path = self._path(session.id)
        payload = json.dumps(session.to_doc(), indent=2) + "\n"
        fd, tmp = tempfile.mkstemp(dir=self.data_dir, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as handle:
                handle.write(payload)
            os.replace(tmp, path)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)

    def _load(self, session_id: str) -> Session:
        path = self._path(session_id)
        if not path.exists():
            raise UnknownSession(f"no session {session_id!r}")
        doc = json.loads(path.read_text())
        config = GameConfig.from_doc(doc["config"], allow_nonstandard=True)
        history = tuple(
            (Exchange.from_doc(h["exchange"]), str(h["at"])) for h in doc["history"]
        )
        current = config.initial
        for exchange, _ in history:
            current = apply_exchange(current, exchange)
        recorded = PieceSet.from_doc(doc["current"])
        if recorded != current:
            raise InvalidConfig(
                f"session {session_id} is corrupt: replaying its history gives "
                f"{current}, document says {recorded}"
            )
        plan_doc = doc.get("planCache")
        plan = ExchangeScript.from_doc(plan_doc, terminal="goal") if plan_doc else None
        return Session(
            id=doc["id"],
            config=config,
            current=current,
            history=history,
            status=_compute_status(current, config.players),
            verdict=_verdict_from_doc(doc["verdict"]),
            deadline=doc.get("deadline"),
            plan_cache=plan,
        )

    def create(self, config: GameConfig, deadline: Optional[str] = None) -> Session:
        session = Session(
            id=secrets.token_hex(8),
            config=config,
            current=config.initial,
            history=(),
            status=_compute_status(config.initial, config.players),
            verdict=solvable(config.initial),
            deadline=deadline,
        )
        with self._lock(session.id):
            self._save(session)
        return session

    def get(self, session_id: str) -> Session:
        with self._lock(session_id):
            return self._load(session_id)

    def record_exchange(self, session_id: str, exchange: Exchange) -> Session:
        with self._lock(session_id):
            session = self._load(session_id)
            if session.status != STATUS_RUNNING:
                raise SessionNotRunning(
                    f"session {session_id} is {session.status}, not running"
                )
            current = apply_exchange(session.current, exchange)
            updated = replace(
                session,
                current=current,
                history=session.history + ((exchange, _now_iso()),),
                status=_compute_status(current, session.config.players),
                plan_cache=None,
            )
            self._save(updated)
            return updated

    def undo(self, session_id: str) -> Session:
        with self._lock(session_id):
            session = self._load(session_id)
            if not session.history:
                raise NothingToUndo(f"session {session_id} has no exchanges to undo")
            history = session.history[:-1]
            current = session.config.initial
            for exchange, _ in history:
                current = apply_exchange(current, exchange)
            updated = replace(
                session,
                current=current,
                history=history,
                status=_compute_status(current, session.config.players),
                plan_cache=None,
            )
            self._save(updated)
            return updated

    def suggestion(self, session_id: str) -> Suggestion:
        """The cooperative policy's next exchange, replanned from scratch."""
        session = self.get(session_id)
        if session.status != STATUS_RUNNING:
            return Suggestion(exchange=None, rationale=None, remaining_plan_cost=None)
        exchange = cooperative_exchange(session.current)
        if exchange is None:
            return Suggestion(exchange=None, rationale=None, remaining_plan_cost=None)
        plan = self._replan(session)
        rationale = plan.steps[0].phase if plan and plan.steps else None
        return Suggestion(
            exchange=exchange,
            rationale=rationale,
            remaining_plan_cost=plan.cost if plan else None,
        )

    def _replan(self, session: Session) -> Optional[ExchangeScript]:
        try:
            script = run_cooperative(
                GameConfig(
                    players=session.config.players,
                    initial=session.current,
                    allow_nonstandard=True,
                )
            )
        except StepBudgetExceeded:
            return None
        return script if script.terminal == "goal" else None

    def plan(self, session_id: str) -> ExchangeScript:
        """A verified script from the session's current state to survival."""
        with self._lock(session_id):
            session = self._load(session_id)
            if session.plan_cache is not None:
                return session.plan_cache
            script = survival_plan(
                GameConfig(
                    players=session.config.players,
                    initial=session.current,
                    allow_nonstandard=True,
                )
            )
            self._save(replace(session, plan_cache=script))
            return script
