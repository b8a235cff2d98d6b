"""Seeded synthetic cohort generator.

Emits ingest-schema JSON event batches whose lexicon scores, topics, and
Bloom levels are predictable, so the generator doubles as an oracle source
for tests and demos. The PRNG is Python's random.Random (MT19937), which is
portable and fully determined by the seed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from datetime import date, datetime, time, timedelta, timezone

from .config import CourseConfig

# Message templates; {topic} is replaced with a syllabus topic. The verbs
# ("define", "compare", ...) pin the Bloom level, the cue phrases
# ("overwhelming", "explore", ...) pin the lexicon scores.
CALM_TEMPLATES = (
    "Can you define the term {topic}?",
    "Please help me compare and contrast ideas in {topic}.",
    "How would I apply and implement {topic} in practice?",
    "Help me organize the key arguments in {topic}.",
    "How should I assess the strengths of {topic}?",
    "I want to design and compose a project about {topic}.",
)
CURIOUS_TEMPLATES = (
    "Can we explore {topic} more?",
    "I am curious about {topic}, can you summarize it?",
)
CONFUSED_TEMPLATES = (
    "I can't understand {topic}.",
    "I am confused about {topic}, can you define it again?",
)
STRESS_TEMPLATES = (
    "This is overwhelming, the {topic} deadline is close.",
    "I feel so stressed about {topic}, help me outline it.",
    "I am panicking about the {topic} exam review.",
)
OFF_SYLLABUS_TEMPLATES = (
    "Out of curiosity, how do rockets work?",
    "Can we explore the history of computing?",
)


@dataclass(frozen=True)
class ScenarioSpec:
    seed: int = 42
    students: int = 10
    start_date: date = date(2024, 2, 1)
    end_date: date = date(2024, 3, 31)
    sessions_per_student: int = 6
    messages_per_session: tuple[int, int] = (2, 5)
    quiz_probability: float = 0.5
    quiz_accuracy: float = 0.7
    flashcard_probability: float = 0.3
    summary_probability: float = 0.3
    exploratory_probability: float = 0.15
    stress_spike_dates: tuple[date, ...] = ()

    def __post_init__(self):
        if self.students < 1:
            raise ValueError("students must be >= 1")
        if self.end_date < self.start_date:
            raise ValueError("invalid date range")

    @classmethod
    def from_file(cls, path: str) -> "ScenarioSpec":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        return cls.from_mapping(raw)

    @classmethod
    def from_mapping(cls, raw: dict) -> "ScenarioSpec":
        kwargs = dict(raw)
        for key in ("start_date", "end_date"):
            if key in kwargs:
                kwargs[key] = date.fromisoformat(kwargs[key])
        if "stress_spike_dates" in kwargs:
            kwargs["stress_spike_dates"] = tuple(
                date.fromisoformat(d) for d in kwargs["stress_spike_dates"]
            )
        if "messages_per_session" in kwargs:
            kwargs["messages_per_session"] = tuple(kwargs["messages_per_session"])
        return cls(**kwargs)


def _rfc3339(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


def _session_dates(spec: ScenarioSpec) -> list[date]:
    """Session days: evenly spread across the range, plus every spike day."""
    span = (spec.end_date - spec.start_date).days
    count = max(1, spec.sessions_per_student - len(spec.stress_spike_dates))
    days = [spec.start_date + timedelta(days=(span * i) // max(1, count - 1) if count > 1 else 0)
            for i in range(count)]
    days.extend(d for d in spec.stress_spike_dates if spec.start_date <= d <= spec.end_date)
    return sorted(set(days))


def _message_text(spec: ScenarioSpec, topics, on_spike: bool, rng: random.Random) -> str:
    if on_spike:
        template = rng.choice(STRESS_TEMPLATES)
    elif rng.random() < spec.exploratory_probability:
        return rng.choice(OFF_SYLLABUS_TEMPLATES)
    else:
        template = rng.choice(CALM_TEMPLATES + CURIOUS_TEMPLATES + CONFUSED_TEMPLATES)
    return template.format(topic=rng.choice(topics))


def generate_cohort(spec: ScenarioSpec, config: CourseConfig | None = None) -> list[list[dict]]:
    """One event batch (ingest-schema dicts) per simulated session.

    Deterministic: the same spec yields byte-identical output.
    """
    config = config or CourseConfig.default()
    topics = list(config.syllabus_topics) or ["General"]
    rng = random.Random(spec.seed)
    spikes = set(spec.stress_spike_dates)

    batches: list[list[dict]] = []
    quiz_serial = 0
    for student_index in range(spec.students):
        student_id = f"student-{student_index + 1:03d}"
        for session_index, day in enumerate(_session_dates(spec)):
            session_id = f"{student_id}-s{session_index + 1:02d}"
            on_spike = day in spikes
            clock = datetime.combine(
                day, time(hour=rng.randint(9, 17), minute=rng.randint(0, 59)), tzinfo=timezone.utc
            )

            def stamp(advance_seconds: int) -> str:
                nonlocal clock
                clock += timedelta(seconds=advance_seconds)
                return _rfc3339(clock)

            def event(kind: str, **fields) -> dict:
                return {
                    "kind": kind,
                    "student_id": student_id,
                    "session_id": session_id,
                    "timestamp": stamp(rng.randint(20, 90)),
                    **fields,
                }

            batch = [event("login")]
            lo, hi = spec.messages_per_session
            for _ in range(rng.randint(lo, hi)):
                batch.append(
                    event("message_sent", text=_message_text(spec, topics, on_spike, rng))
                )
            if rng.random() < spec.quiz_probability:
                quiz_serial += 1
                quiz_id = f"quiz-{quiz_serial:04d}"
                quiz_topic = rng.choice(topics)
                batch.append(event("quiz_started", quiz_id=quiz_id, topic=quiz_topic))
                for index in range(rng.randint(2, 4)):
                    batch.append(
                        event(
                            "quiz_question_answered",
                            quiz_id=quiz_id,
                            question_index=index,
                            elapsed_seconds=rng.randint(10, 90),
                            correct=rng.random() < spec.quiz_accuracy,
                        )
                    )
                batch.append(event("quiz_completed", quiz_id=quiz_id))
            if rng.random() < spec.flashcard_probability:
                batch.append(
                    event("flashcards_generated", topic=rng.choice(topics), count=rng.randint(5, 20))
                )
            if rng.random() < spec.summary_probability:
                batch.append(event("summary_requested", topic=rng.choice(topics)))
            batch.append(event("logout"))
            batches.append(batch)
    return batches


def cohort_as_json(batches: list[list[dict]]) -> list[str]:
    """Serialize each batch with a stable layout, for byte-level comparison."""
    return [json.dumps(batch, indent=2, sort_keys=True) for batch in batches]
