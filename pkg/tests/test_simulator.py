from __future__ import annotations

import json
from datetime import date

import pytest

from classpulse.affect import LexiconProvider
from classpulse.events import parse_event_batch
from classpulse.session import ingest_batch
from classpulse.simulator import ScenarioSpec, cohort_as_json, generate_cohort
from classpulse.store import StudentStore


class TestDeterminism:
    def test_same_seed_byte_identical(self, config):
        spec = ScenarioSpec(seed=42, students=4)
        a = cohort_as_json(generate_cohort(spec, config))
        b = cohort_as_json(generate_cohort(spec, config))
        assert a == b

    def test_different_seed_differs(self, config):
        a = cohort_as_json(generate_cohort(ScenarioSpec(seed=1), config))
        b = cohort_as_json(generate_cohort(ScenarioSpec(seed=2), config))
        assert a != b


class TestOutputShape:
    def test_single_student_single_session(self, config):
        spec = ScenarioSpec(seed=7, students=1, sessions_per_student=1)
        batches = generate_cohort(spec, config)
        assert len(batches) == 1

    def test_validates_with_zero_rejects(self, config):
        spec = ScenarioSpec(seed=11, students=5)
        for batch in generate_cohort(spec, config):
            parsed = parse_event_batch(json.dumps(batch))
            assert parsed.rejects == []
            assert len(parsed.events) == len(batch)

    def test_invalid_date_range_rejected(self):
        with pytest.raises(ValueError, match="date range"):
            ScenarioSpec(start_date=date(2024, 5, 1), end_date=date(2024, 4, 1))

    def test_spec_round_trips_from_mapping(self):
        spec = ScenarioSpec.from_mapping({
            "seed": 3,
            "students": 2,
            "start_date": "2024-02-01",
            "end_date": "2024-02-20",
            "stress_spike_dates": ["2024-02-10"],
        })
        assert spec.stress_spike_dates == (date(2024, 2, 10),)


class TestStressSpike:
    def test_spike_bucket_exceeds_off_spike_mean(self, config):
        spike = date(2024, 3, 8)
        spec = ScenarioSpec(seed=42, students=6, stress_spike_dates=(spike,))
        store = StudentStore()
        provider = LexiconProvider(config.lexicon)
        for batch in generate_cohort(spec, config):
            ingest_batch(json.dumps(batch), provider, config, store)
        series = store.class_aggregate(bucket_seconds=86400)
        spike_buckets = [v["stress"] for k, v in series.items() if k.date() == spike]
        off = [v["stress"] for k, v in series.items() if k.date() != spike]
        assert spike_buckets, "no data in the spike bucket"
        assert off, "no off-spike data"
        assert spike_buckets[0] > sum(off) / len(off)
