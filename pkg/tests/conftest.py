from __future__ import annotations

import pytest

from classpulse.affect import LexiconProvider
from classpulse.config import CourseConfig


@pytest.fixture(scope="session")
def config() -> CourseConfig:
    return CourseConfig.default()


@pytest.fixture(scope="session")
def lexicon_provider(config) -> LexiconProvider:
    return LexiconProvider(config.lexicon)


def make_event(kind: str, *, student="s1", session="sess1", ts="2024-03-01T10:00:00Z", **fields):
    """Ingest-schema event dict with sensible defaults."""
    return {
        "kind": kind,
        "student_id": student,
        "session_id": session,
        "timestamp": ts,
        **fields,
    }
