"""Privacy-preserving persistence: per-student metric series and class roll-ups.

Raw message text never enters this module; everything stored here is a
computed metric, a topic label, or a timing.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .affect import DIMENSIONS, AffectScores
from .bloom import BloomLevel
from .metrics import QuizQuestion, QuizRecord, StudyMethodDistribution

SNAPSHOT_VERSION = 1


class SnapshotError(Exception):
    """Unreadable or unsupported snapshot file."""


@dataclass(frozen=True)
class MetricPoint:
    timestamp: datetime
    affect: AffectScores
    topic: str
    bloom: BloomLevel | None
    exploratory: bool
    degraded: bool

    def as_dict(self) -> dict:
        return {
            "timestamp": self.timestamp.isoformat(),
            "affect": self.affect.as_dict(),
            "topic": self.topic,
            "bloom": self.bloom.label if self.bloom is not None else None,
            "exploratory": self.exploratory,
            "degraded": self.degraded,
        }


@dataclass
class StudentRecord:
    student_id: str
    metric_points: list[MetricPoint] = field(default_factory=list)
    quiz_records: list[QuizRecord] = field(default_factory=list)
    study_methods: StudyMethodDistribution = field(default_factory=StudyMethodDistribution)
    confusion_counts: dict[str, int] = field(default_factory=dict)  # session_id -> count
    login_spans: list[tuple[datetime, datetime]] = field(default_factory=list)
    topics_seen: list[str] = field(default_factory=list)
    flashcard_events: list[tuple[datetime, str]] = field(default_factory=list)
    summary_events: list[tuple[datetime, str]] = field(default_factory=list)

    def note_topics(self, topics) -> None:
        seen_lower = {t.lower() for t in self.topics_seen}
        for topic in topics:
            if topic.lower() not in seen_lower:
                self.topics_seen.append(topic)
                seen_lower.add(topic.lower())


def _isoformat(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).isoformat()


def _parse_dt(raw: str) -> datetime:
    return datetime.fromisoformat(raw).astimezone(timezone.utc)


class StudentStore:
    """Append-only in-memory store with JSON snapshots.

    Writes for one student are serialized; reads see a consistent snapshot.
    """

    def __init__(self):
        self._lock = threading.RLock()
        self._records: dict[str, StudentRecord] = {}
        self._seen_sessions: set[tuple[str, str]] = set()
        self._class_topics: list[str] = []

    # -- writes ----------------------------------------------------------

    def upsert_outcome(self, outcome) -> None:
        """Append a session outcome, creating the record on first sight.

        Idempotent per (student_id, session_id): a resubmitted session is a
        no-op.
        """
        with self._lock:
            key = (outcome.student_id, outcome.session_id)
            if key in self._seen_sessions:
                return
            self._seen_sessions.add(key)
            record = self._records.get(outcome.student_id)
            if record is None:
                record = StudentRecord(student_id=outcome.student_id)
                self._records[outcome.student_id] = record
            record.metric_points = sorted(
                record.metric_points + list(outcome.metric_points),
                key=lambda p: p.timestamp,
            )
            record.quiz_records.extend(outcome.quiz_records)
            record.study_methods.add(outcome.study_method_increments)
            record.confusion_counts[outcome.session_id] = outcome.confusion_count
            record.login_spans.extend(outcome.login_spans)
            record.flashcard_events.extend(outcome.flashcard_events)
            record.summary_events.extend(outcome.summary_events)
            topics = [p.topic for p in outcome.metric_points]
            record.note_topics(topics)
            seen_lower = {t.lower() for t in self._class_topics}
            for topic in topics:
                if topic.lower() not in seen_lower:
                    self._class_topics.append(topic)
                    seen_lower.add(topic.lower())

    # -- reads -----------------------------------------------------------

    def student_ids(self) -> list[str]:
        with self._lock:
            return sorted(self._records)

    def get_record(self, student_id: str) -> StudentRecord | None:
        with self._lock:
            return self._records.get(student_id)

    def records(self) -> list[StudentRecord]:
        with self._lock:
            return list(self._records.values())

    def find_quiz(self, quiz_id: str) -> list[tuple[str, QuizRecord]]:
        """All (student_id, record) pairs for a quiz id."""
        with self._lock:
            found = []
            for record in self._records.values():
                for quiz in record.quiz_records:
                    if quiz.quiz_id == quiz_id:
                        found.append((record.student_id, quiz))
            return found

    def dedup_topics(self, student_id: str | None = None) -> list[str]:
        """Unique topic labels in first-seen order (case-insensitive dedup)."""
        with self._lock:
            if student_id is None:
                return list(self._class_topics)
            record = self._records.get(student_id)
            return list(record.topics_seen) if record else []

    def class_study_methods(self) -> StudyMethodDistribution:
        with self._lock:
            total = StudyMethodDistribution()
            for record in self._records.values():
                total.add(record.study_methods)
            return total

    def class_aggregate(
        self,
        period_start: datetime | None = None,
        period_end: datetime | None = None,
        bucket_seconds: int = 86400,
    ) -> dict[datetime, dict[str, float]]:
        """Per-bucket class affect: mean over students of each student's bucket mean.

        Buckets with no data are absent. Bucket boundaries are aligned to the
        Unix epoch.
        """
        if bucket_seconds <= 0:
            raise ValueError("bucket must be positive")
        with self._lock:
            per_student: dict[str, dict[int, list[AffectScores]]] = {}
            for student_id, record in self._records.items():
                buckets: dict[int, list[AffectScores]] = {}
                for point in record.metric_points:
                    if period_start is not None and point.timestamp < period_start:
                        continue
                    if period_end is not None and point.timestamp > period_end:
                        continue
                    index = int(point.timestamp.timestamp() // bucket_seconds)
                    buckets.setdefault(index, []).append(point.affect)
                if buckets:
                    per_student[student_id] = buckets

        bucket_values: dict[int, dict[str, list[float]]] = {}
        for buckets in per_student.values():
            for index, scores in buckets.items():
                sink = bucket_values.setdefault(index, {dim: [] for dim in DIMENSIONS})
                for dim in DIMENSIONS:
                    student_mean = sum(getattr(s, dim) for s in scores) / len(scores)
                    sink[dim].append(student_mean)

        series: dict[datetime, dict[str, float]] = {}
        for index in sorted(bucket_values):
            start = datetime.fromtimestamp(index * bucket_seconds, tz=timezone.utc)
            series[start] = {
                dim: sum(values) / len(values)
                for dim, values in bucket_values[index].items()
            }
        return series

    # -- snapshots -------------------------------------------------------

    def snapshot_save(self, path: str) -> None:
        with self._lock:
            document = {
                "version": SNAPSHOT_VERSION,
                "sessions": sorted(list(pair) for pair in self._seen_sessions),
                "class_topics": self._class_topics,
                "students": [self._record_to_dict(r) for r in self._records.values()],
            }
        tmp = f"{path}.tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(document, fh, indent=2)
        os.replace(tmp, path)

    @classmethod
    def snapshot_load(cls, path: str) -> "StudentStore":
        try:
            with open(path, encoding="utf-8") as fh:
                document = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise SnapshotError(f"unreadable snapshot: {exc}") from exc
        if not isinstance(document, dict) or document.get("version") != SNAPSHOT_VERSION:
            raise SnapshotError(
                f"unsupported snapshot version {document.get('version')!r}"
                if isinstance(document, dict)
                else "snapshot is not a JSON object"
            )
        store = cls()
        store._seen_sessions = {tuple(pair) for pair in document["sessions"]}
        store._class_topics = list(document["class_topics"])
        for raw in document["students"]:
            record = cls._record_from_dict(raw)
            store._records[record.student_id] = record
        return store

    @staticmethod
    def _record_to_dict(record: StudentRecord) -> dict:
        return {
            "student_id": record.student_id,
            "metric_points": [p.as_dict() for p in record.metric_points],
            "quiz_records": [q.as_dict() for q in record.quiz_records],
            "study_methods": record.study_methods.as_dict(),
            "confusion_counts": record.confusion_counts,
            "login_spans": [[_isoformat(a), _isoformat(b)] for a, b in record.login_spans],
            "topics_seen": record.topics_seen,
            "flashcard_events": [[_isoformat(t), topic] for t, topic in record.flashcard_events],
            "summary_events": [[_isoformat(t), topic] for t, topic in record.summary_events],
        }

    @staticmethod
    def _record_from_dict(raw: dict) -> StudentRecord:
        points = [
            MetricPoint(
                timestamp=_parse_dt(p["timestamp"]),
                affect=AffectScores(**p["affect"]),
                topic=p["topic"],
                bloom=BloomLevel.from_label(p["bloom"]) if p["bloom"] else None,
                exploratory=p["exploratory"],
                degraded=p["degraded"],
            )
            for p in raw["metric_points"]
        ]
        quizzes = [
            QuizRecord(
                quiz_id=q["quiz_id"],
                topic=q["topic"],
                started=_parse_dt(q["started"]),
                completed=_parse_dt(q["completed"]),
                per_question=tuple(
                    QuizQuestion(
                        index=item["index"],
                        elapsed_seconds=item["elapsed_seconds"],
                        correct=item["correct"],
                    )
                    for item in q["per_question"]
                ),
                complete=q["complete"],
            )
            for q in raw["quiz_records"]
        ]
        return StudentRecord(
            student_id=raw["student_id"],
            metric_points=points,
            quiz_records=quizzes,
            study_methods=StudyMethodDistribution(**raw["study_methods"]),
            confusion_counts=dict(raw["confusion_counts"]),
            login_spans=[(_parse_dt(a), _parse_dt(b)) for a, b in raw["login_spans"]],
            topics_seen=list(raw["topics_seen"]),
            flashcard_events=[(_parse_dt(t), topic) for t, topic in raw["flashcard_events"]],
            summary_events=[(_parse_dt(t), topic) for t, topic in raw["summary_events"]],
        )
