"""Attribute exploration: the machine proposes implications valid in the
current example context, walking the lectic order of sets closed under the
accepted implications; the expert accepts them or refutes them with new
example objects.  Sessions persist as append-only JSON event logs.
"""
from __future__ import annotations

import json
import threading
import uuid
from pathlib import Path
from typing import Iterable

from .bitset import mask_of, to_frozenset
from .contexts import Context
from .errors import ExplorationError, FcaError
from .implications import Implication, ImplicationSet, _next_closure_mask, _StemEngine

VIOLATES_ACCEPTED = "VIOLATES_ACCEPTED"
DOES_NOT_REFUTE = "DOES_NOT_REFUTE"
DUPLICATE_OBJECT = "DUPLICATE_OBJECT"
SESSION_FINISHED = "SESSION_FINISHED"
NOT_FOUND = "NOT_FOUND"


class ExplorationSession:
    """One exploration in progress.

    `accepted` holds (premise, closure-at-acceptance) mask pairs; `pending`
    is the current question as (premise, current closure in the examples).
    The cursor is the pending premise; it advances only on accept.
    """

    def __init__(self, attributes: Iterable[str], seed: Context | None = None,
                 session_id: str | None = None):
        attributes = tuple(attributes)
        if not attributes:
            raise FcaError("attribute universe must be nonempty")
        if seed is not None:
            if seed.attributes != attributes:
                raise FcaError("seed attributes do not match the universe")
            self.examples = seed
        else:
            self.examples = Context((), attributes, ())
        self.id = session_id or uuid.uuid4().hex
        self.attributes = attributes
        self.width = len(attributes)
        self.accepted: list[tuple[int, int]] = []
        self._engine = _StemEngine(self.width)
        self.pending: tuple[int, int] | None = None
        self.finished = False
        self._seek(0, include_start=True)

    # -- question generation -------------------------------------------------

    def _seek(self, start: int, include_start: bool) -> None:
        """Move to the first set closed under the accepted implications, at or
        after `start` lectically, that is not closed in the examples; it
        becomes the pending question.
        """
        a: int | None = start
        if not include_start:
            a = _next_closure_mask(start, self.width, self._engine.close)
        while a is not None:
            closure = self.examples.close_attributes_mask(a)
            if closure != a:
                self.pending = (a, closure)
                return
            a = _next_closure_mask(a, self.width, self._engine.close)
        self.pending = None
        self.finished = True

    # -- expert answers --------------------------------------------------------

    def accept(self) -> None:
        if self.finished or self.pending is None:
            raise ExplorationError(SESSION_FINISHED, "no pending question")
        premise, closure = self.pending
        self.accepted.append((premise, closure))
        self._engine.add(premise, closure)
        self._seek(premise, include_start=False)

    def reject(self, object_name: str, intent: Iterable[str]) -> None:
        if self.finished or self.pending is None:
            raise ExplorationError(SESSION_FINISHED, "no pending question")
        if object_name in self.examples.objects:
            raise ExplorationError(DUPLICATE_OBJECT, f"object {object_name!r} already present")
        intent_mask = mask_of(self._attr_index(m) for m in intent)
        for premise, closure in self.accepted:
            if intent_mask & premise == premise and closure & ~intent_mask:
                names = self._imp_names(premise, closure)
                raise ExplorationError(VIOLATES_ACCEPTED, f"counterexample violates accepted {names}")
        premise, closure = self.pending
        if intent_mask & premise != premise or not (closure & ~premise) & ~intent_mask:
            raise ExplorationError(DOES_NOT_REFUTE,
                                   "counterexample must have the premise and miss part of the conclusion")
        self.examples = Context(self.examples.objects + (object_name,),
                                self.attributes,
                                self.examples.rows + (intent_mask,))
        # same lectic position, weaker closure in the enlarged context
        self._seek(premise, include_start=True)

    # -- views -----------------------------------------------------------------

    def _attr_index(self, name: str) -> int:
        try:
            return self.attributes.index(name)
        except ValueError:
            raise FcaError(f"unknown attribute {name!r}") from None

    def _imp_names(self, premise: int, closure: int) -> str:
        left = " ".join(self.attributes[i] for i in sorted(to_frozenset(premise)))
        right = " ".join(self.attributes[i] for i in sorted(to_frozenset(closure & ~premise)))
        return f"{left or '{}'} -> {right}"

    def accepted_set(self) -> ImplicationSet:
        return ImplicationSet(self.width, tuple(
            Implication(to_frozenset(p), to_frozenset(c)) for p, c in self.accepted))

    def pending_implication(self) -> Implication | None:
        if self.pending is None:
            return None
        p, c = self.pending
        return Implication(to_frozenset(p), to_frozenset(c))

    @property
    def status(self) -> str:
        return "finished" if self.finished else "running"


# -- persistence -----------------------------------------------------------------


def _imp_json(attributes: tuple[str, ...], premise: int, closure: int) -> dict:
    return {
        "premise": [attributes[i] for i in sorted(to_frozenset(premise))],
        "conclusion": [attributes[i] for i in sorted(to_frozenset(closure & ~premise))],
    }


def session_view(s: ExplorationSession) -> dict:
    rows = [[s.attributes[i] for i in sorted(to_frozenset(r))] for r in s.examples.rows]
    view = {
        "id": s.id,
        "status": s.status,
        "attributes": list(s.attributes),
        "examples": {"objects": list(s.examples.objects), "rows": rows},
        "accepted": [_imp_json(s.attributes, p, c) for p, c in s.accepted],
        "pending": None,
    }
    if s.pending is not None:
        view["pending"] = _imp_json(s.attributes, *s.pending)
    return view


class SessionStore:
    """Sessions kept in memory and mirrored to one JSONL event log each, so a
    restart replays them; one lock per session serializes answers.
    """

    def __init__(self, state_dir: str | Path | None = None):
        self.state_dir = Path(state_dir) if state_dir else None
        if self.state_dir:
            self.state_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, ExplorationSession] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry = threading.Lock()
        if self.state_dir:
            for path in sorted(self.state_dir.glob("*.jsonl")):
                session = self._replay(path)
                if session is not None:
                    self._sessions[session.id] = session
                    self._locks[session.id] = threading.Lock()

    def _log_path(self, session_id: str) -> Path | None:
        return self.state_dir / f"{session_id}.jsonl" if self.state_dir else None

    def _append(self, session_id: str, event: dict) -> None:
        path = self._log_path(session_id)
        if path is None:
            return
        with path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")
            fh.flush()

    def _replay(self, path: Path) -> ExplorationSession | None:
        events = []
        with path.open(encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    events.append(json.loads(line))
        if not events or events[0].get("type") != "start":
            return None
        head = events[0]
        seed = None
        if head.get("seed") is not None:
            attrs = tuple(head["attributes"])
            lookup = {m: i for i, m in enumerate(attrs)}
            rows = tuple(mask_of(lookup[m] for m in row) for row in head["seed"]["rows"])
            seed = Context(tuple(head["seed"]["objects"]), attrs, rows)
        session = ExplorationSession(head["attributes"], seed, session_id=head["id"])
        for event in events[1:]:
            if event["type"] == "accept":
                session.accept()
            elif event["type"] == "reject":
                session.reject(event["object"], event["intent"])
        return session

    def create(self, attributes: Iterable[str], seed: Context | None = None) -> ExplorationSession:
        session = ExplorationSession(attributes, seed)
        with self._registry:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()
        start = {"type": "start", "id": session.id, "attributes": list(session.attributes),
                 "seed": None}
        if seed is not None:
            start["seed"] = {"objects": list(seed.objects),
                             "rows": [[seed.attributes[i] for i in sorted(to_frozenset(r))]
                                      for r in seed.rows]}
        self._append(session.id, start)
        self._log_question(session)
        return session

    def get(self, session_id: str) -> ExplorationSession:
        with self._registry:
            session = self._sessions.get(session_id)
        if session is None:
            raise ExplorationError(NOT_FOUND, f"no session {session_id!r}")
        return session

    def _log_question(self, session: ExplorationSession) -> None:
        if session.pending is not None:
            self._append(session.id, {"type": "question",
                                      **_imp_json(session.attributes, *session.pending)})

    def answer(self, session_id: str, kind: str, object_name: str | None = None,
               intent: Iterable[str] | None = None) -> ExplorationSession:
        session = self.get(session_id)
        with self._locks[session_id]:
            if kind == "accept":
                session.accept()
                self._append(session_id, {"type": "accept"})
            elif kind == "reject":
                if object_name is None:
                    raise ExplorationError(DOES_NOT_REFUTE, "reject needs an object name")
                session.reject(object_name, intent or ())
                self._append(session_id, {"type": "reject", "object": object_name,
                                          "intent": sorted(intent or ())})
            else:
                raise FcaError(f"unknown answer kind {kind!r}")
            self._log_question(session)
        return session
