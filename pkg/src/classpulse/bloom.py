"""Bloom's-taxonomy question classification and the FIFO conversation window."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from enum import IntEnum
from importlib import resources

# The provider context window holds 8192 tokens, roughly 6000 words, so one
# word costs 8192/6000 tokens.
WINDOW_CAPACITY_TOKENS = 8192
TOKENS_PER_WORD_NUM = 8192
TOKENS_PER_WORD_DEN = 6000


class BloomLevel(IntEnum):
    """The six cognitive levels, ordered from shallowest to deepest."""

    REMEMBERING = 1
    UNDERSTANDING = 2
    APPLYING = 3
    ANALYZING = 4
    EVALUATING = 5
    CREATING = 6

    @property
    def label(self) -> str:
        return self.name.capitalize()

    @classmethod
    def from_label(cls, label: str) -> "BloomLevel":
        return cls[label.upper()]


_SUFFIXES = ("ing", "ed", "s")
_DOUBLED = set("bdgmnprt")

_token_re = re.compile(r"[a-z0-9']+")


def tokenize(text: str) -> list[str]:
    """Lowercase word tokens with punctuation stripped (apostrophes kept)."""
    return _token_re.findall(text.lower())


def stem_verb(verb: str) -> str:
    """Reduce a planning verb to a match stem.

    Strips one gerund/derivational suffix (-ing, -ed, -s) and undoubles the
    trailing consonant that gerund formation doubled ("blogging" -> "blog").
    Multi-word verbs are reduced to their distinctive head word.
    """
    word = tokenize(verb)[0]
    for suffix in _SUFFIXES:
        if word.endswith(suffix) and len(word) - len(suffix) >= 3:
            word = word[: -len(suffix)]
            break
    if len(word) >= 4 and word[-1] == word[-2] and word[-1] in _DOUBLED:
        word = word[:-1]
    return word


@dataclass(frozen=True)
class VerbTable:
    """Per-level verb stems used as classification evidence."""

    stems: dict[BloomLevel, frozenset[str]]

    @classmethod
    def from_mapping(cls, mapping: dict[str, list[str]]) -> "VerbTable":
        stems: dict[BloomLevel, frozenset[str]] = {}
        for level in BloomLevel:
            verbs = mapping[level.name.lower()]
            if not verbs:
                raise ValueError(f"empty verb list for {level.label}")
            stems[level] = frozenset(stem_verb(v) for v in verbs)
        return cls(stems=stems)

    @classmethod
    def from_file(cls, path: str) -> "VerbTable":
        with open(path, encoding="utf-8") as fh:
            return cls.from_mapping(json.load(fh))

    @classmethod
    def default(cls) -> "VerbTable":
        raw = resources.files("classpulse.data").joinpath("verbs.json").read_text()
        return cls.from_mapping(json.loads(raw))


def classify_bloom(text: str, table: VerbTable) -> BloomLevel | None:
    """Classify a question by its planning verbs; highest matched level wins.

    A token matches a stem when it begins with that stem. Returns None when
    no verb matches.
    """
    tokens = tokenize(text)
    matched = [
        level
        for level, stems in table.stems.items()
        if any(tok.startswith(stem) for tok in tokens for stem in stems)
    ]
    return max(matched) if matched else None


def estimate_tokens(text: str) -> int:
    """Token estimate from word count at the 8192-tokens-per-6000-words ratio."""
    words = len(text.split())
    if words == 0:
        return 0
    return max(1, math.ceil(words * TOKENS_PER_WORD_NUM / TOKENS_PER_WORD_DEN))


@dataclass
class WindowEntry:
    role: str  # "student" | "assistant"
    token_count: int
    text: str  # transient; cleared when the session closes


@dataclass
class ConversationWindow:
    """FIFO message history capped by token budget, newest always retained."""

    capacity_tokens: int = WINDOW_CAPACITY_TOKENS
    entries: list[WindowEntry] = field(default_factory=list)

    @property
    def total_tokens(self) -> int:
        return sum(e.token_count for e in self.entries)

    def push(self, role: str, text: str) -> None:
        entry = WindowEntry(role=role, token_count=estimate_tokens(text), text=text)
        if entry.token_count > self.capacity_tokens:
            # An oversize message is kept whole as the sole entry.
            self.entries = [entry]
            return
        self.entries.append(entry)
        while self.total_tokens > self.capacity_tokens:
            self.entries.pop(0)

    def clear(self) -> None:
        self.entries.clear()


def progression_series(record) -> list[tuple]:
    """Time-ordered (timestamp, BloomLevel) pairs for a student's record.

    Metric points without a Bloom classification are omitted.
    """
    return [
        (point.timestamp, point.bloom)
        for point in record.metric_points
        if point.bloom is not None
    ]
