"""Engagement, study-method, confusion/curiosity, and quiz metrics."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime

from .bloom import tokenize

DEFAULT_SIMILARITY_THRESHOLD = 0.6


class IncompleteQuizError(Exception):
    """An incomplete quiz record reached the timing metrics."""


@dataclass(frozen=True)
class QuizQuestion:
    index: int
    elapsed_seconds: float
    correct: bool


@dataclass(frozen=True)
class QuizRecord:
    quiz_id: str
    topic: str
    started: datetime
    completed: datetime
    per_question: tuple[QuizQuestion, ...]
    complete: bool = True

    def as_dict(self) -> dict:
        return {
            "quiz_id": self.quiz_id,
            "topic": self.topic,
            "started": self.started.isoformat(),
            "completed": self.completed.isoformat(),
            "per_question": [
                {"index": q.index, "elapsed_seconds": q.elapsed_seconds, "correct": q.correct}
                for q in self.per_question
            ],
            "complete": self.complete,
        }


@dataclass
class StudyMethodDistribution:
    """Usage counts for the four interaction modes."""

    question_answering: int = 0
    quizzes: int = 0
    summary: int = 0
    flashcards: int = 0

    def add(self, other: "StudyMethodDistribution") -> None:
        self.question_answering += other.question_answering
        self.quizzes += other.quizzes
        self.summary += other.summary
        self.flashcards += other.flashcards

    def as_dict(self) -> dict[str, int]:
        return {
            "question_answering": self.question_answering,
            "quizzes": self.quizzes,
            "summary": self.summary,
            "flashcards": self.flashcards,
        }


@dataclass(frozen=True)
class EngagementSummary:
    questions_asked: int
    flashcard_uses: int
    quiz_uses: int
    summary_uses: int
    total_interaction_seconds: float
    login_count: int
    mean_session_seconds: float

    def as_dict(self) -> dict:
        return {
            "questions_asked": self.questions_asked,
            "flashcard_uses": self.flashcard_uses,
            "quiz_uses": self.quiz_uses,
            "summary_uses": self.summary_uses,
            "total_interaction_seconds": self.total_interaction_seconds,
            "login_count": self.login_count,
            "mean_session_seconds": self.mean_session_seconds,
        }


def quiz_stats(record: QuizRecord) -> tuple[float, list[float], tuple[int, int]]:
    """Total seconds, per-question seconds, and (correct, total) score."""
    if not record.complete:
        raise IncompleteQuizError("incomplete quiz reached metrics")
    per_question = [q.elapsed_seconds for q in record.per_question]
    correct = sum(1 for q in record.per_question if q.correct)
    return sum(per_question), per_question, (correct, len(record.per_question))


def _token_set(text: str) -> frozenset[str]:
    return frozenset(tokenize(text))


def jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a and not b:
        return 1.0
    union = a | b
    return len(a & b) / len(union)


def confusion_index(
    messages: list[str], similarity_threshold: float = DEFAULT_SIMILARITY_THRESHOLD
) -> int:
    """Count of repeated questions within one session.

    A message is repeated when its token-set Jaccard similarity to any
    earlier message reaches the threshold. Runs on in-session text only;
    callers persist just the count.
    """
    token_sets = [_token_set(m) for m in messages]
    repeats = 0
    for i, current in enumerate(token_sets):
        if any(jaccard(current, earlier) >= similarity_threshold for earlier in token_sets[:i]):
            repeats += 1
    return repeats


def curiosity_index(record) -> tuple[int, int]:
    """(distinct topics inquired about, questions outside the syllabus)."""
    topics = {p.topic for p in record.metric_points}
    exploratory = sum(1 for p in record.metric_points if p.exploratory)
    return len(topics), exploratory


def topic_switch_rate(topics: list[str]) -> float:
    """Fraction of consecutive message pairs that change topic; 0 for n <= 1."""
    if len(topics) <= 1:
        return 0.0
    switches = sum(1 for a, b in zip(topics, topics[1:]) if a != b)
    return switches / (len(topics) - 1)


def study_method_distribution(record) -> StudyMethodDistribution:
    """The record's accumulated interaction-mode counters."""
    dist = StudyMethodDistribution()
    dist.add(record.study_methods)
    return dist


def _clip_span(
    start: datetime, end: datetime, period_start: datetime, period_end: datetime
) -> float:
    lo = max(start, period_start)
    hi = min(end, period_end)
    return max(0.0, (hi - lo).total_seconds())


def engagement_summary(record, period_start: datetime, period_end: datetime) -> EngagementSummary:
    """Active and passive engagement counts restricted to a time period."""
    if period_start > period_end:
        raise ValueError("period start after end")
    questions = sum(
        1 for p in record.metric_points if period_start <= p.timestamp <= period_end
    )
    quiz_uses = sum(
        1 for q in record.quiz_records if period_start <= q.started <= period_end
    )
    flashcards = sum(
        1 for t, _ in record.flashcard_events if period_start <= t <= period_end
    )
    summaries = sum(
        1 for t, _ in record.summary_events if period_start <= t <= period_end
    )
    spans = [
        (login, logout)
        for login, logout in record.login_spans
        if logout >= period_start and login <= period_end
    ]
    total = sum(_clip_span(lo, hi, period_start, period_end) for lo, hi in spans)
    login_count = len(spans)
    mean = total / login_count if login_count else 0.0
    return EngagementSummary(
        questions_asked=questions,
        flashcard_uses=flashcards,
        quiz_uses=quiz_uses,
        summary_uses=summaries,
        total_interaction_seconds=total,
        login_count=login_count,
        mean_session_seconds=mean,
    )
