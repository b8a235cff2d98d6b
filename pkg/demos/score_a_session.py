"""Walk one student session through the full pipeline, printing each stage.

Runs entirely offline with the deterministic lexicon scorer.
"""

from __future__ import annotations

import json

from classpulse import CourseConfig, LexiconProvider, StudentStore, ingest_batch

EVENTS = [
    {"kind": "login", "student_id": "alice", "session_id": "demo-1",
     "timestamp": "2024-03-04T09:00:00Z"},
    {"kind": "message_sent", "student_id": "alice", "session_id": "demo-1",
     "timestamp": "2024-03-04T09:01:00Z",
     "text": "Can you define engineering ethics for me?"},
    {"kind": "message_sent", "student_id": "alice", "session_id": "demo-1",
     "timestamp": "2024-03-04T09:03:00Z",
     "text": "This deadline is overwhelming and I can't understand the reading"},
    {"kind": "quiz_started", "student_id": "alice", "session_id": "demo-1",
     "timestamp": "2024-03-04T09:05:00Z", "quiz_id": "quiz-demo",
     "topic": "Engineering Ethics"},
    {"kind": "quiz_question_answered", "student_id": "alice", "session_id": "demo-1",
     "timestamp": "2024-03-04T09:06:00Z", "quiz_id": "quiz-demo",
     "question_index": 0, "elapsed_seconds": 30, "correct": True},
    {"kind": "quiz_question_answered", "student_id": "alice", "session_id": "demo-1",
     "timestamp": "2024-03-04T09:07:00Z", "quiz_id": "quiz-demo",
     "question_index": 1, "elapsed_seconds": 45, "correct": False},
    {"kind": "quiz_completed", "student_id": "alice", "session_id": "demo-1",
     "timestamp": "2024-03-04T09:08:00Z", "quiz_id": "quiz-demo"},
    {"kind": "logout", "student_id": "alice", "session_id": "demo-1",
     "timestamp": "2024-03-04T09:15:00Z"},
]


def main() -> None:
    config = CourseConfig.default()
    store = StudentStore()
    report = ingest_batch(json.dumps(EVENTS), LexiconProvider(config.lexicon), config, store)
    print(f"ingested: accepted={report.accepted} rejected={report.rejected} "
          f"dropped={report.dropped}")

    record = store.get_record("alice")
    print("\nper-message metric points (no raw text is stored):")
    for point in record.metric_points:
        level = point.bloom.label if point.bloom else "-"
        print(f"  {point.timestamp:%H:%M}  topic={point.topic!r:45s} "
              f"bloom={level:13s} {point.affect.as_dict()}")

    quiz = record.quiz_records[0]
    seconds = [q.elapsed_seconds for q in quiz.per_question]
    correct = sum(q.correct for q in quiz.per_question)
    print(f"\nquiz {quiz.quiz_id}: {seconds} seconds per question, "
          f"{correct}/{len(seconds)} correct")
    print(f"study methods: {record.study_methods.as_dict()}")


if __name__ == "__main__":
    main()
