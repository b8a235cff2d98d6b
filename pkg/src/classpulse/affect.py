"""Per-message affect scoring and topic identification.

Two providers implement the same contract: a remote chat-completions LLM
configured for few-shot prompting, and a deterministic cue-phrase lexicon
that runs offline and backs the remote path up whenever it fails.
"""

from __future__ import annotations

import json
import math
import os
import re
from dataclasses import dataclass, field

import httpx

from .bloom import BloomLevel, ConversationWindow, VerbTable, classify_bloom, estimate_tokens

SCORE_MIN = 1
SCORE_MAX = 10

DIMENSIONS = ("stress", "curiosity", "confusion", "agitation")

GENERAL_TOPIC = "General"

API_KEY_ENV = "CLASSPULSE_LLM_API_KEY"

_SYSTEM_INSTRUCTION = (
    "You rate the emotional undertone of a student's message to a course "
    "assistant. Reply with a single JSON object and nothing else, shaped as "
    '{"stress": n, "curiosity": n, "confusion": n, "agitation": n, '
    '"topic": "..."} where each n is an integer from 1 (low intensity) to '
    "10 (high intensity) and topic names the main subject of the message."
)

# Original few-shot examples; the scores follow the 1-10 intensity scale.
DEFAULT_SHOTS: tuple[tuple[str, str], ...] = (
    (
        "I can't understand this assignment at all and it's due tomorrow.",
        '{"stress": 8, "curiosity": 2, "confusion": 8, "agitation": 4, '
        '"topic": "Assignment help"}',
    ),
    (
        "Can we explore this topic more? It seems fascinating.",
        '{"stress": 1, "curiosity": 9, "confusion": 1, "agitation": 1, '
        '"topic": "Course topic"}',
    ),
    (
        "This keeps failing no matter what I try. So frustrating.",
        '{"stress": 5, "curiosity": 2, "confusion": 4, "agitation": 8, '
        '"topic": "Troubleshooting"}',
    ),
)


class ProviderError(Exception):
    """Raised when a provider cannot produce a usable analysis."""


@dataclass(frozen=True)
class AffectScores:
    stress: int
    curiosity: int
    confusion: int
    agitation: int

    def __post_init__(self):
        for dim in DIMENSIONS:
            value = getattr(self, dim)
            if not SCORE_MIN <= value <= SCORE_MAX:
                raise ValueError(f"{dim} score {value} outside [1, 10]")

    def as_dict(self) -> dict[str, int]:
        return {dim: getattr(self, dim) for dim in DIMENSIONS}

    @classmethod
    def baseline(cls) -> "AffectScores":
        return cls(stress=1, curiosity=1, confusion=1, agitation=1)


@dataclass(frozen=True)
class MessageAnalysis:
    affect: AffectScores
    topic: str
    bloom: BloomLevel | None
    exploratory: bool
    token_count: int
    degraded: bool


@dataclass(frozen=True)
class AffectLexicon:
    """Cue phrases with weights, one list per affect dimension."""

    cues: dict[str, tuple[tuple[str, int], ...]]

    def __post_init__(self):
        for dim in DIMENSIONS:
            for phrase, weight in self.cues.get(dim, ()):
                if phrase != phrase.lower():
                    raise ValueError(f"cue phrase not lowercase: {phrase!r}")
                if weight < 1:
                    raise ValueError(f"cue weight < 1: {phrase!r}")

    @classmethod
    def from_mapping(cls, mapping: dict) -> "AffectLexicon":
        cues = {
            dim: tuple((entry["phrase"], entry["weight"]) for entry in mapping.get(dim, []))
            for dim in DIMENSIONS
        }
        return cls(cues=cues)

    @classmethod
    def from_file(cls, path: str) -> "AffectLexicon":
        with open(path, encoding="utf-8") as fh:
            return cls.from_mapping(json.load(fh))

    @classmethod
    def default(cls) -> "AffectLexicon":
        from importlib import resources

        raw = resources.files("classpulse.data").joinpath("lexicon.json").read_text()
        return cls.from_mapping(json.loads(raw))


def _normalize(text: str) -> str:
    return " ".join(text.lower().split())


def lexicon_score(text: str, lexicon: AffectLexicon) -> AffectScores:
    """Deterministic cue-frequency scoring: 1 + sum of matched cue weights, capped at 10.

    Matching is case-insensitive whole-substring on whitespace-normalized
    text; every occurrence of a cue counts.
    """
    normalized = _normalize(text)
    scores = {}
    for dim in DIMENSIONS:
        total = SCORE_MIN
        for phrase, weight in lexicon.cues.get(dim, ()):
            count = normalized.count(phrase)
            if count:
                total += weight * count
        scores[dim] = min(SCORE_MAX, total)
    return AffectScores(**scores)


def extract_topic(text: str, config) -> tuple[str, bool]:
    """Longest syllabus topic found in the text wins; no match means General.

    Returns (topic, exploratory) where exploratory marks questions outside
    the configured syllabus.
    """
    normalized = _normalize(text)
    best = None
    for topic in config.syllabus_topics:
        if topic.lower() in normalized:
            if best is None or len(topic) > len(best):
                best = topic
    if best is None:
        return GENERAL_TOPIC, True
    return best, False


@dataclass(frozen=True)
class ProviderRequest:
    """A chat-completions request body plus transport settings."""

    model: str
    temperature: float
    messages: tuple[dict, ...]

    def as_payload(self) -> dict:
        return {
            "model": self.model,
            "temperature": self.temperature,
            "messages": list(self.messages),
        }


def build_affect_prompt(
    text: str,
    window: ConversationWindow,
    shots: tuple[tuple[str, str], ...] = DEFAULT_SHOTS,
    model: str = "gpt-4",
) -> ProviderRequest:
    """Assemble the few-shot scoring request: system, shots, history, message.

    Sampling temperature is fixed at 1.0.
    """
    messages: list[dict] = [{"role": "system", "content": _SYSTEM_INSTRUCTION}]
    for question, reply in shots:
        messages.append({"role": "user", "content": question})
        messages.append({"role": "assistant", "content": reply})
    for entry in window.entries:
        role = "user" if entry.role == "student" else "assistant"
        messages.append({"role": role, "content": entry.text})
    messages.append({"role": "user", "content": text})
    return ProviderRequest(model=model, temperature=1.0, messages=tuple(messages))


def _clamp_score(value) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProviderError(f"non-numeric score: {value!r}")
    rounded = math.floor(float(value) + 0.5)  # round half-up
    return max(SCORE_MIN, min(SCORE_MAX, rounded))


def _first_json_object(raw: str) -> dict | None:
    decoder = json.JSONDecoder()
    for match in re.finditer(r"\{", raw):
        try:
            obj, _ = decoder.raw_decode(raw, match.start())
        except json.JSONDecodeError:
            continue
        if isinstance(obj, dict):
            return obj
    return None


def parse_provider_response(raw: str) -> tuple[AffectScores, str]:
    """Pull scores and topic out of the provider's text reply.

    Takes the first JSON object found; clamps scores into [1, 10] and rounds
    floats half-up; a missing topic falls back to General. Raises
    ProviderError when no object or a score field is missing.
    """
    obj = _first_json_object(raw)
    if obj is None:
        raise ProviderError("no JSON object in provider reply")
    scores = {}
    for dim in DIMENSIONS:
        if dim not in obj:
            raise ProviderError(f"provider reply missing {dim!r}")
        scores[dim] = _clamp_score(obj[dim])
    topic = obj.get("topic")
    if not isinstance(topic, str) or not topic.strip():
        topic = GENERAL_TOPIC
    return AffectScores(**scores), topic.strip()


class LexiconProvider:
    """Deterministic offline provider; also the fallback for the remote one."""

    name = "lexicon"

    def __init__(self, lexicon: AffectLexicon | None = None):
        self.lexicon = lexicon or AffectLexicon.default()

    def analyze(self, text: str, window: ConversationWindow, config) -> tuple[AffectScores, str, bool]:
        scores = lexicon_score(text, self.lexicon)
        topic, exploratory = extract_topic(text, config)
        return scores, topic, exploratory


class RemoteProvider:
    """Chat-completions HTTP provider with bearer-token auth.

    Vendor-neutral: endpoint URL and model name are configuration; the API
    key comes from the CLASSPULSE_LLM_API_KEY environment variable.
    """

    name = "remote"

    def __init__(
        self,
        endpoint: str,
        model: str = "gpt-4",
        timeout: float = 10.0,
        shots: tuple[tuple[str, str], ...] = DEFAULT_SHOTS,
        client: httpx.Client | None = None,
    ):
        self.endpoint = endpoint
        self.model = model
        self.timeout = timeout
        self.shots = shots
        self._client = client or httpx.Client(timeout=timeout)

    def analyze(self, text: str, window: ConversationWindow, config) -> tuple[AffectScores, str, bool]:
        request = build_affect_prompt(text, window, self.shots, self.model)
        headers = {}
        api_key = os.environ.get(API_KEY_ENV)
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        try:
            response = self._client.post(
                self.endpoint, json=request.as_payload(), headers=headers, timeout=self.timeout
            )
            response.raise_for_status()
            body = response.json()
            raw = body["choices"][0]["message"]["content"]
        except (httpx.HTTPError, KeyError, IndexError, ValueError) as exc:
            raise ProviderError(f"remote provider failed: {exc}") from exc
        scores, topic = parse_provider_response(raw)
        exploratory = topic.lower() not in (t.lower() for t in config.syllabus_topics)
        return scores, topic, exploratory


def analyze_message(
    text: str,
    window: ConversationWindow,
    provider,
    config,
    verb_table: VerbTable | None = None,
    fallback: LexiconProvider | None = None,
) -> MessageAnalysis:
    """Score one message, never raising: provider failures degrade to the lexicon."""
    table = verb_table or config.verb_table
    degraded = False
    try:
        scores, topic, exploratory = provider.analyze(text, window, config)
    except Exception:
        fallback = fallback or LexiconProvider(getattr(config, "lexicon", None))
        scores, topic, exploratory = fallback.analyze(text, window, config)
        degraded = True
    return MessageAnalysis(
        affect=scores,
        topic=topic,
        bloom=classify_bloom(text, table),
        exploratory=exploratory,
        token_count=estimate_tokens(text),
        degraded=degraded,
    )
