"""Per-session analysis lifecycle: cleaned events in, text-free outcome out."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime

from . import events as ev
from .affect import LexiconProvider, analyze_message
from .bloom import ConversationWindow
from .config import CourseConfig
from .metrics import QuizQuestion, QuizRecord, StudyMethodDistribution, confusion_index
from .store import MetricPoint


@dataclass
class SessionOutcome:
    """Everything a session contributes to the store; holds no message text."""

    student_id: str
    session_id: str
    metric_points: list[MetricPoint] = field(default_factory=list)
    quiz_records: list[QuizRecord] = field(default_factory=list)
    study_method_increments: StudyMethodDistribution = field(
        default_factory=StudyMethodDistribution
    )
    flashcard_events: list[tuple[datetime, str]] = field(default_factory=list)
    summary_events: list[tuple[datetime, str]] = field(default_factory=list)
    login_spans: list[tuple[datetime, datetime]] = field(default_factory=list)
    confusion_count: int = 0
    dropped_events: list[tuple[str, str]] = field(default_factory=list)  # (kind, reason)


def _build_quiz_records(quiz_events: dict[str, list[ev.SessionEvent]]) -> list[QuizRecord]:
    records = []
    for quiz_id, group in quiz_events.items():
        started = next(e for e in group if e.kind == ev.KIND_QUIZ_STARTED)
        completed = next(e for e in group if e.kind == ev.KIND_QUIZ_COMPLETED)
        questions = sorted(
            (
                QuizQuestion(
                    index=e.get("question_index"),
                    elapsed_seconds=float(e.get("elapsed_seconds")),
                    correct=e.get("correct"),
                )
                for e in group
                if e.kind == ev.KIND_QUIZ_ANSWERED
            ),
            key=lambda q: q.index,
        )
        records.append(
            QuizRecord(
                quiz_id=quiz_id,
                topic=started.get("topic"),
                started=started.timestamp,
                completed=completed.timestamp,
                per_question=tuple(questions),
                complete=True,
            )
        )
    records.sort(key=lambda r: r.started)
    return records


def run_session(
    cleaned: list[ev.SessionEvent],
    provider,
    config: CourseConfig,
) -> SessionOutcome:
    """Analyze one cleaned session and reduce it to text-free metrics.

    Message text lives only in working memory (conversation window and the
    repeated-question check) and is discarded before returning. Provider
    failures degrade individual points to lexicon scores; the session never
    aborts.
    """
    if not cleaned:
        raise ValueError("run_session requires at least one event")
    keys = {(e.student_id, e.session_id) for e in cleaned}
    if len(keys) != 1:
        raise ValueError("events span multiple sessions")
    student_id, session_id = keys.pop()

    outcome = SessionOutcome(student_id=student_id, session_id=session_id)
    window = ConversationWindow()
    fallback = LexiconProvider(config.lexicon)
    message_texts: list[str] = []
    quiz_groups: dict[str, list[ev.SessionEvent]] = {}
    open_login: datetime | None = None

    try:
        for event in cleaned:
            if event.kind == ev.KIND_MESSAGE:
                text = event.get("text")
                analysis = analyze_message(
                    text, window, provider, config, config.verb_table, fallback
                )
                window.push("student", text)
                message_texts.append(text)
                outcome.metric_points.append(
                    MetricPoint(
                        timestamp=event.timestamp,
                        affect=analysis.affect,
                        topic=analysis.topic,
                        bloom=analysis.bloom,
                        exploratory=analysis.exploratory,
                        degraded=analysis.degraded,
                    )
                )
                outcome.study_method_increments.question_answering += 1
            elif event.kind in ev.QUIZ_KINDS:
                quiz_groups.setdefault(event.get("quiz_id"), []).append(event)
                if event.kind == ev.KIND_QUIZ_STARTED:
                    outcome.study_method_increments.quizzes += 1
            elif event.kind == ev.KIND_FLASHCARDS:
                outcome.study_method_increments.flashcards += 1
                outcome.flashcard_events.append((event.timestamp, event.get("topic")))
            elif event.kind == ev.KIND_SUMMARY:
                outcome.study_method_increments.summary += 1
                outcome.summary_events.append((event.timestamp, event.get("topic")))
            elif event.kind == ev.KIND_LOGIN:
                open_login = event.timestamp
            elif event.kind == ev.KIND_LOGOUT:
                if open_login is not None:
                    outcome.login_spans.append((open_login, event.timestamp))
                    open_login = None

        if open_login is not None:
            # Session closed by batch close rather than an explicit logout.
            outcome.login_spans.append((open_login, cleaned[-1].timestamp))

        outcome.quiz_records = _build_quiz_records(quiz_groups)
        outcome.confusion_count = confusion_index(
            message_texts, config.thresholds.similarity
        )
    finally:
        window.clear()
        message_texts.clear()
    return outcome


@dataclass
class IngestReport:
    accepted: int
    rejected: int
    dropped: int
    outcomes: list[SessionOutcome] = field(default_factory=list)


def ingest_batch(payload: str | bytes, provider, config: CourseConfig, store) -> IngestReport:
    """Full ingest pipeline: parse, clean, analyze per session, persist.

    Raises BatchParseError for malformed JSON. A quiz abandoned mid-session
    still counts toward study-method preference even though its timings are
    dropped by cleaning.
    """
    batch = ev.parse_event_batch(payload)
    kept, dropped = ev.clean_events(batch.events)

    sessions: dict[tuple[str, str], list[ev.SessionEvent]] = {}
    for event in kept:
        sessions.setdefault((event.student_id, event.session_id), []).append(event)

    abandoned_starts: dict[tuple[str, str], int] = {}
    for event, reason in dropped:
        if event.kind == ev.KIND_QUIZ_STARTED and reason == ev.REASON_INCOMPLETE_QUIZ:
            key = (event.student_id, event.session_id)
            abandoned_starts[key] = abandoned_starts.get(key, 0) + 1
            sessions.setdefault(key, [])

    report = IngestReport(accepted=len(kept), rejected=len(batch.rejects), dropped=len(dropped))
    for (student_id, session_id), session_events in sessions.items():
        if session_events:
            outcome = run_session(session_events, provider, config)
        else:
            outcome = SessionOutcome(student_id=student_id, session_id=session_id)
        outcome.study_method_increments.quizzes += abandoned_starts.get(
            (student_id, session_id), 0
        )
        outcome.dropped_events = [
            (e.kind, reason)
            for e, reason in dropped
            if (e.student_id, e.session_id) == (student_id, session_id)
        ]
        store.upsert_outcome(outcome)
        report.outcomes.append(outcome)
    return report
