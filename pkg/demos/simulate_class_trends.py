"""Simulate a cohort with a stress spike and print the class affect series.

Shows the simulator feeding the aggregation pipeline directly, without the
HTTP layer: the exam-week spike is plainly visible in the daily stress means.
"""

from __future__ import annotations

import json
from datetime import date

from classpulse import CourseConfig, LexiconProvider, StudentStore, ingest_batch
from classpulse.simulator import ScenarioSpec, generate_cohort


def main() -> None:
    config = CourseConfig.default()
    spec = ScenarioSpec(seed=42, students=8, stress_spike_dates=(date(2024, 3, 8),))

    store = StudentStore()
    provider = LexiconProvider(config.lexicon)
    batches = generate_cohort(spec, config)
    for batch in batches:
        ingest_batch(json.dumps(batch), provider, config, store)
    print(f"ingested {len(batches)} sessions from {spec.students} students\n")

    series = store.class_aggregate(bucket_seconds=86400)
    print("day          stress  curiosity  confusion  (class mean-of-student-means)")
    for bucket, values in sorted(series.items()):
        bar = "#" * round(values["stress"] * 4)
        spike = "  <- exam" if bucket.date() in spec.stress_spike_dates else ""
        print(f"{bucket:%Y-%m-%d}   {values['stress']:5.2f}  {values['curiosity']:9.2f}"
              f"  {values['confusion']:9.2f}  {bar}{spike}")

    print("\nclass topics:", ", ".join(store.dedup_topics()[:5]), "...")


if __name__ == "__main__":
    main()
