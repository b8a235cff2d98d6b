from __future__ import annotations

import json
import random

import pytest

from classpulse import events as ev
from conftest import make_event


def parse(objs):
    return ev.parse_event_batch(json.dumps(objs))


class TestParseEventBatch:
    def test_single_message(self):
        batch = parse([make_event("message_sent", text="What is engineering ethics?")])
        assert len(batch.events) == 1
        assert batch.events[0].kind == "message_sent"
        assert batch.events[0].get("text") == "What is engineering ethics?"
        assert not batch.rejects

    def test_empty_batch(self):
        batch = parse([])
        assert batch.events == [] and batch.rejects == []

    def test_unknown_kind_rejected_not_aborted(self):
        batch = parse(
            [
                make_event("message_sent", text="a"),
                make_event("telemetry_blob"),
                make_event("login"),
            ]
        )
        assert len(batch.events) == 2
        assert len(batch.rejects) == 1
        assert "telemetry_blob" in batch.rejects[0][1]

    def test_missing_required_field_rejected(self):
        obj = make_event("message_sent", text="a")
        del obj["timestamp"]
        batch = parse([obj, make_event("quiz_completed")])  # quiz_id missing too
        assert len(batch.events) == 0
        assert len(batch.rejects) == 2

    def test_malformed_json_reports_offset(self):
        with pytest.raises(ev.BatchParseError) as excinfo:
            ev.parse_event_batch('[{"kind": }]')
        assert excinfo.value.offset > 0

    def test_timestamp_normalized_to_utc(self):
        batch = parse([make_event("login", ts="2024-03-01T05:00:00-05:00")])
        t = batch.events[0].timestamp
        assert t.utcoffset().total_seconds() == 0
        assert t.hour == 10

    def test_negative_elapsed_rejected(self):
        batch = parse(
            [
                make_event(
                    "quiz_question_answered",
                    quiz_id="q1",
                    question_index=0,
                    elapsed_seconds=-3,
                    correct=True,
                )
            ]
        )
        assert batch.events == []
        assert len(batch.rejects) == 1


def _quiz_group(quiz_id, complete, base="2024-03-01T10:0{}:00Z"):
    group = [make_event("quiz_started", quiz_id=quiz_id, topic="Engineering Ethics", ts=base.format(1))]
    group.append(
        make_event(
            "quiz_question_answered",
            quiz_id=quiz_id,
            question_index=0,
            elapsed_seconds=30,
            correct=True,
            ts=base.format(2),
        )
    )
    if complete:
        group.append(make_event("quiz_completed", quiz_id=quiz_id, ts=base.format(3)))
    return group


class TestCleanEvents:
    def test_ui_noise_dropped_as_irrelevant(self):
        batch = parse([make_event("ui_noise", description="user clicked on a button")])
        kept, dropped = ev.clean_events(batch.events)
        assert kept == []
        assert dropped[0][1] == "irrelevant"

    def test_incomplete_quiz_group_dropped_in_full(self):
        batch = parse(
            _quiz_group("q7", complete=False)
            + [
                make_event(
                    "quiz_question_answered",
                    quiz_id="q7",
                    question_index=1,
                    elapsed_seconds=10,
                    correct=False,
                    ts="2024-03-01T10:04:00Z",
                )
            ]
        )
        kept, dropped = ev.clean_events(batch.events)
        assert kept == []
        assert len(dropped) == 3
        assert all(reason == "incomplete quiz" for _, reason in dropped)

    def test_complete_quiz_kept(self):
        batch = parse(_quiz_group("q1", complete=True))
        kept, dropped = ev.clean_events(batch.events)
        assert len(kept) == 3 and not dropped

    def test_exact_duplicates_reduced_to_one(self):
        obj = make_event("message_sent", text="hi")
        batch = parse([obj, obj])
        kept, dropped = ev.clean_events(batch.events)
        assert len(kept) == 1
        assert dropped[0][1] == "duplicate"

    def test_idempotent(self):
        objs = (
            [make_event("login", ts="2024-03-01T09:00:00Z")]
            + _quiz_group("q1", complete=True)
            + _quiz_group("q2", complete=False, base="2024-03-01T11:0{}:00Z")
            + [make_event("ui_noise", description="x", ts="2024-03-01T12:00:00Z")]
        )
        batch = parse(objs)
        kept1, _ = ev.clean_events(batch.events)
        kept2, dropped2 = ev.clean_events(kept1)
        assert kept2 == kept1 and dropped2 == []

    def test_unsorted_input_sorted_stably(self):
        batch = parse(
            [
                make_event("message_sent", text="b", ts="2024-03-01T11:00:00Z"),
                make_event("message_sent", text="a", ts="2024-03-01T10:00:00Z"),
            ]
        )
        kept, _ = ev.clean_events(batch.events)
        assert [e.get("text") for e in kept] == ["a", "b"]

    def test_partition_accounts_for_all_events(self):
        rng = random.Random(7)
        objs = []
        for i in range(50):
            kind = rng.choice(["message_sent", "ui_noise", "login", "logout"])
            extra = (
                {"text": f"m{i}"}
                if kind == "message_sent"
                else {"description": "d"} if kind == "ui_noise" else {}
            )
            objs.append(make_event(kind, ts=f"2024-03-01T10:{i % 60:02d}:00Z", **extra))
        batch = parse(objs)
        kept, dropped = ev.clean_events(batch.events)
        assert len(kept) + len(dropped) == len(batch.events)
