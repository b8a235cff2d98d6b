from __future__ import annotations

import json
import random
from importlib import resources

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classpulse.bloom import (
    BloomLevel,
    ConversationWindow,
    VerbTable,
    WindowEntry,
    classify_bloom,
    estimate_tokens,
    stem_verb,
)


@pytest.fixture(scope="module")
def table() -> VerbTable:
    return VerbTable.default()


def raw_verbs() -> dict[str, list[str]]:
    return json.loads(resources.files("classpulse.data").joinpath("verbs.json").read_text())


class TestEstimateTokens:
    def test_two_words(self):
        # ceil(2 * 8192 / 6000) = ceil(2.73) = 3
        assert estimate_tokens("hello world") == 3

    def test_empty(self):
        assert estimate_tokens("") == 0

    def test_six_thousand_words_is_exactly_capacity(self):
        assert estimate_tokens("word " * 6000) == 8192

    def test_single_word(self):
        # ceil(1 * 8192 / 6000) = 2
        assert estimate_tokens("hi") == 2

    @given(st.integers(min_value=0, max_value=7000), st.integers(min_value=0, max_value=7000))
    def test_monotone_in_word_count(self, a, b):
        if a <= b:
            assert estimate_tokens("w " * a) <= estimate_tokens("w " * b)


class TestClassifyBloom:
    def test_define_is_remembering(self, table):
        assert classify_bloom("Can you define the term engineering ethics?", table) == BloomLevel.REMEMBERING

    def test_compare_contrast_is_understanding(self, table):
        text = "Help me compare and contrast utilitarian and deontological ethics"
        assert classify_bloom(text, table) == BloomLevel.UNDERSTANDING

    def test_highest_level_wins_on_mixed_verbs(self, table):
        # "Summarize" -> Understanding, "assess" -> Evaluating
        assert classify_bloom("Summarize the code, then assess its weaknesses", table) == BloomLevel.EVALUATING

    def test_no_verb_match_is_none(self, table):
        assert classify_bloom("xyzzy qwfp", table) is None

    def test_every_table_verb_classifies_to_its_category(self, table):
        verbs = raw_verbs()
        level_of = {name: BloomLevel[name.upper()] for name in verbs}
        expected = {}
        for name, entries in verbs.items():
            for verb in entries:
                key = verb.lower()
                expected[key] = max(expected.get(key, level_of[name]), level_of[name])
        for verb, want in expected.items():
            assert classify_bloom(verb, table) == want, verb

    def test_token_order_irrelevant(self, table):
        a = classify_bloom("define then evaluate the argument by assessing it", table)
        b = classify_bloom("assessing it, evaluate the argument, then define", table)
        assert a == b

    def test_stem_covers_inflections(self, table):
        for text in ("define this", "defining this", "defined this"):
            assert classify_bloom(text, table) == BloomLevel.REMEMBERING


class TestStemVerb:
    def test_gerund_stripped(self):
        assert stem_verb("Defining") == "defin"

    def test_doubled_consonant_undoubled(self):
        assert stem_verb("Blogging") == "blog"

    def test_multiword_uses_head_word(self):
        assert stem_verb("Acting out") == "act"


def words(n: int) -> str:
    return "w " * n


class TestConversationWindow:
    def test_push_into_empty(self):
        w = ConversationWindow()
        w.push("student", words(73))  # ceil(73 * 8192/6000) = 100
        assert len(w.entries) == 1
        assert w.total_tokens == 100

    def test_eviction_oldest_first(self):
        w = ConversationWindow()
        w.entries = [WindowEntry("student", 4000, "a"), WindowEntry("student", 4100, "b")]
        w.push("student", words(146))  # 146 * 8192/6000 = 199.3 -> 200 tokens
        assert [e.token_count for e in w.entries] == [4100, 200]

    def test_oversize_message_becomes_sole_entry(self):
        w = ConversationWindow()
        w.push("student", words(100))
        w.push("student", words(6700))  # > 8192 tokens
        assert len(w.entries) == 1
        assert w.entries[0].token_count > w.capacity_tokens

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(min_value=1, max_value=7000), min_size=1, max_size=30))
    def test_invariants_hold_under_random_pushes(self, word_counts):
        w = ConversationWindow()
        pushed = []
        for count in word_counts:
            text = words(count)
            w.push("student", text)
            pushed.append(text)
            oversize = estimate_tokens(text) > w.capacity_tokens
            if oversize:
                assert [e.text for e in w.entries] == [text]
            else:
                assert w.total_tokens <= w.capacity_tokens
            # newest retained, and window is a suffix of the push sequence
            assert w.entries[-1].text == text
            assert [e.text for e in w.entries] == pushed[len(pushed) - len(w.entries):]

    def test_clear_discards_text(self):
        w = ConversationWindow()
        w.push("student", "sensitive text here")
        w.clear()
        assert w.entries == []
