"""Course configuration: syllabus, event calendar, thresholds, resource files."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from datetime import date

from .affect import AffectLexicon
from .bloom import VerbTable

EVENT_KINDS = ("assignment", "quiz", "project", "exam")

DEFAULT_SIMILARITY_THRESHOLD = 0.6
DEFAULT_BUCKET_SECONDS = 86400  # 1 day


@dataclass(frozen=True)
class CourseEvent:
    date: date
    label: str
    kind: str

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"unknown course event kind {self.kind!r}")

    def as_dict(self) -> dict:
        return {"date": self.date.isoformat(), "label": self.label, "kind": self.kind}


@dataclass(frozen=True)
class Thresholds:
    similarity: float = DEFAULT_SIMILARITY_THRESHOLD
    bucket_seconds: int = DEFAULT_BUCKET_SECONDS


@dataclass(frozen=True)
class CourseConfig:
    syllabus_topics: tuple[str, ...]
    course_events: tuple[CourseEvent, ...] = ()
    thresholds: Thresholds = field(default_factory=Thresholds)
    lexicon: AffectLexicon = field(default_factory=AffectLexicon.default)
    verb_table: VerbTable = field(default_factory=VerbTable.default)

    @classmethod
    def default(cls) -> "CourseConfig":
        from importlib import resources

        raw = resources.files("classpulse.data").joinpath("course.json").read_text()
        return cls._from_mapping(json.loads(raw), base_dir=None)

    @classmethod
    def from_file(cls, path: str) -> "CourseConfig":
        with open(path, encoding="utf-8") as fh:
            mapping = json.load(fh)
        return cls._from_mapping(mapping, base_dir=os.path.dirname(os.path.abspath(path)))

    @classmethod
    def _from_mapping(cls, mapping: dict, base_dir: str | None) -> "CourseConfig":
        def resolve(p: str) -> str:
            return p if base_dir is None or os.path.isabs(p) else os.path.join(base_dir, p)

        events = tuple(
            CourseEvent(date=date.fromisoformat(e["date"]), label=e["label"], kind=e["kind"])
            for e in mapping.get("course_events", [])
        )
        thresholds_raw = mapping.get("thresholds", {})
        thresholds = Thresholds(
            similarity=thresholds_raw.get("similarity", DEFAULT_SIMILARITY_THRESHOLD),
            bucket_seconds=thresholds_raw.get("bucket_seconds", DEFAULT_BUCKET_SECONDS),
        )
        lexicon_path = mapping.get("lexicon_path")
        lexicon = (
            AffectLexicon.from_file(resolve(lexicon_path))
            if lexicon_path
            else AffectLexicon.default()
        )
        verb_path = mapping.get("verb_table_path")
        verb_table = (
            VerbTable.from_file(resolve(verb_path)) if verb_path else VerbTable.default()
        )
        return cls(
            syllabus_topics=tuple(mapping.get("syllabus_topics", [])),
            course_events=events,
            thresholds=thresholds,
            lexicon=lexicon,
            verb_table=verb_table,
        )
