"""Session event parsing, validation, and cleaning."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone

KIND_MESSAGE = "message_sent"
KIND_QUIZ_STARTED = "quiz_started"
KIND_QUIZ_ANSWERED = "quiz_question_answered"
KIND_QUIZ_COMPLETED = "quiz_completed"
KIND_FLASHCARDS = "flashcards_generated"
KIND_SUMMARY = "summary_requested"
KIND_LOGIN = "login"
KIND_LOGOUT = "logout"
KIND_UI_NOISE = "ui_noise"

QUIZ_KINDS = (KIND_QUIZ_STARTED, KIND_QUIZ_ANSWERED, KIND_QUIZ_COMPLETED)

# Required payload fields (beyond kind/student_id/session_id/timestamp).
_PAYLOAD_FIELDS: dict[str, tuple[str, ...]] = {
    KIND_MESSAGE: ("text",),
    KIND_QUIZ_STARTED: ("quiz_id", "topic"),
    KIND_QUIZ_ANSWERED: ("quiz_id", "question_index", "elapsed_seconds", "correct"),
    KIND_QUIZ_COMPLETED: ("quiz_id",),
    KIND_FLASHCARDS: ("topic", "count"),
    KIND_SUMMARY: ("topic",),
    KIND_LOGIN: (),
    KIND_LOGOUT: (),
    KIND_UI_NOISE: ("description",),
}


class BatchParseError(Exception):
    """The batch document itself is not valid JSON."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class SessionEvent:
    kind: str
    student_id: str
    session_id: str
    timestamp: datetime
    payload: tuple[tuple[str, object], ...] = ()

    def get(self, name: str):
        for key, value in self.payload:
            if key == name:
                return value
        raise KeyError(name)


@dataclass
class ParsedBatch:
    events: list[SessionEvent]
    rejects: list[tuple[dict, str]] = field(default_factory=list)


def _parse_timestamp(raw) -> datetime:
    if not isinstance(raw, str):
        raise ValueError("timestamp must be a string")
    text = raw.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    parsed = datetime.fromisoformat(text)
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def _parse_event(obj: dict) -> SessionEvent:
    kind = obj.get("kind")
    if kind not in _PAYLOAD_FIELDS:
        raise ValueError(f"unknown event kind {kind!r}")
    for name in ("student_id", "session_id", "timestamp"):
        if name not in obj:
            raise ValueError(f"missing required field {name!r}")
    timestamp = _parse_timestamp(obj["timestamp"])
    payload_items = []
    for name in _PAYLOAD_FIELDS[kind]:
        if name not in obj:
            raise ValueError(f"missing required field {name!r}")
        payload_items.append((name, obj[name]))
    payload = dict(payload_items)
    if kind == KIND_QUIZ_ANSWERED:
        if not isinstance(payload["question_index"], int) or payload["question_index"] < 0:
            raise ValueError("question_index must be a non-negative integer")
        if not isinstance(payload["elapsed_seconds"], (int, float)) or payload["elapsed_seconds"] < 0:
            raise ValueError("elapsed_seconds must be non-negative")
        if not isinstance(payload["correct"], bool):
            raise ValueError("correct must be a boolean")
    if kind == KIND_FLASHCARDS:
        if not isinstance(payload["count"], int) or payload["count"] < 1:
            raise ValueError("count must be a positive integer")
    return SessionEvent(
        kind=kind,
        student_id=str(obj["student_id"]),
        session_id=str(obj["session_id"]),
        timestamp=timestamp,
        payload=tuple(payload_items),
    )


def parse_event_batch(payload: str | bytes) -> ParsedBatch:
    """Parse a JSON event batch; malformed events are rejected one by one.

    Raises BatchParseError (with the byte offset) only when the document
    itself is not valid JSON or not an array.
    """
    try:
        document = json.loads(payload)
    except json.JSONDecodeError as exc:
        raise BatchParseError(exc.msg, exc.pos) from exc
    if not isinstance(document, list):
        raise BatchParseError("batch must be a JSON array", 0)
    batch = ParsedBatch(events=[])
    for obj in document:
        if not isinstance(obj, dict):
            batch.rejects.append(({"value": obj}, "event must be a JSON object"))
            continue
        try:
            batch.events.append(_parse_event(obj))
        except (ValueError, TypeError) as exc:
            batch.rejects.append((obj, str(exc)))
    return batch


REASON_IRRELEVANT = "irrelevant"
REASON_DUPLICATE = "duplicate"
REASON_INCOMPLETE_QUIZ = "incomplete quiz"


def clean_events(
    events: list[SessionEvent],
) -> tuple[list[SessionEvent], list[tuple[SessionEvent, str]]]:
    """Drop irrelevant, duplicated, and incorrect events.

    UI noise is irrelevant; exact duplicates are reduced to one; quiz groups
    without both a start and a completion are incorrect (their timings must
    not reach metrics). Idempotent and order-preserving; the kept list stays
    time-ordered (stable sort, ties keep arrival order).
    """
    ordered = sorted(events, key=lambda e: e.timestamp)
    dropped: list[tuple[SessionEvent, str]] = []

    seen: set = set()
    deduped: list[SessionEvent] = []
    for event in ordered:
        key = (event.kind, event.student_id, event.session_id, event.timestamp, event.payload)
        if key in seen:
            dropped.append((event, REASON_DUPLICATE))
        else:
            seen.add(key)
            deduped.append(event)

    # Quiz ids (per student/session) that have both a start and a completion.
    started, completed = set(), set()
    for event in deduped:
        if event.kind in QUIZ_KINDS:
            group = (event.student_id, event.session_id, event.get("quiz_id"))
            if event.kind == KIND_QUIZ_STARTED:
                started.add(group)
            elif event.kind == KIND_QUIZ_COMPLETED:
                completed.add(group)
    finished = started & completed

    kept: list[SessionEvent] = []
    for event in deduped:
        if event.kind == KIND_UI_NOISE:
            dropped.append((event, REASON_IRRELEVANT))
        elif event.kind in QUIZ_KINDS and (
            (event.student_id, event.session_id, event.get("quiz_id")) not in finished
        ):
            dropped.append((event, REASON_INCOMPLETE_QUIZ))
        else:
            kept.append(event)
    return kept, dropped
