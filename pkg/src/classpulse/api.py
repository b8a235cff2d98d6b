"""JSON HTTP API for ingestion and all instructor-dashboard queries."""

from __future__ import annotations

from datetime import date, datetime, time, timezone

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .affect import DIMENSIONS, LexiconProvider
from .bloom import progression_series
from .config import CourseConfig
from .events import BatchParseError
from .metrics import quiz_stats
from .session import ingest_batch
from .store import StudentStore

DISCLAIMER = "This data is not 100% factual and should be used as a reference only."

DEFAULT_MAX_BODY_BYTES = 5 * 1024 * 1024


def _envelope(data) -> dict:
    return {"data": data, "disclaimer": DISCLAIMER}


def _parse_bound(raw: str | None, end_of_day: bool) -> datetime | None:
    if raw is None or raw == "":
        return None
    try:
        if len(raw) == 10:  # calendar date
            day = date.fromisoformat(raw)
            boundary = time.max if end_of_day else time.min
            return datetime.combine(day, boundary, tzinfo=timezone.utc)
        text = raw[:-1] + "+00:00" if raw.endswith(("Z", "z")) else raw
        parsed = datetime.fromisoformat(text)
        if parsed.tzinfo is None:
            parsed = parsed.replace(tzinfo=timezone.utc)
        return parsed.astimezone(timezone.utc)
    except ValueError:
        raise ValueError(f"bad time bound {raw!r}")


def create_app(
    config: CourseConfig | None = None,
    store: StudentStore | None = None,
    provider=None,
    max_body_bytes: int = DEFAULT_MAX_BODY_BYTES,
    snapshot_path: str | None = None,
    auth_token: str | None = None,
    frontend_dir: str | None = None,
) -> FastAPI:
    config = config or CourseConfig.default()
    store = store if store is not None else StudentStore()
    provider = provider or LexiconProvider(config.lexicon)

    app = FastAPI(title="classpulse", docs_url=None, redoc_url=None)
    app.state.store = store
    app.state.config = config

    if auth_token:

        @app.middleware("http")
        async def _check_token(request: Request, call_next):
            if request.url.path.startswith("/api/"):
                header = request.headers.get("authorization", "")
                if header != f"Bearer {auth_token}":
                    return JSONResponse({"detail": "unauthorized"}, status_code=401)
            return await call_next(request)

    def _course_events_between(start: datetime | None, end: datetime | None) -> list[dict]:
        out = []
        for event in config.course_events:
            midday = datetime.combine(event.date, time(hour=12), tzinfo=timezone.utc)
            if start is not None and midday < start:
                continue
            if end is not None and midday > end:
                continue
            out.append(event.as_dict())
        return out

    @app.post("/api/ingest/session", status_code=202)
    async def ingest_session(request: Request):
        body = await request.body()
        if len(body) > max_body_bytes:
            return JSONResponse({"detail": "payload too large"}, status_code=413)
        try:
            report = ingest_batch(body, provider, config, store)
        except BatchParseError as exc:
            return JSONResponse({"detail": str(exc)}, status_code=400)
        if report.accepted + report.dropped == 0:
            return JSONResponse(
                {"detail": "batch contains no valid events"}, status_code=422
            )
        if snapshot_path:
            store.snapshot_save(snapshot_path)
        return {
            "accepted": report.accepted,
            "rejected": report.rejected,
            "dropped": report.dropped,
        }

    @app.get("/api/class/affect")
    def class_affect(
        dimension: str = "stress",
        raw_from: str | None = Query(None, alias="from"),
        to: str | None = None,
        bucket: int | None = None,
    ):
        if dimension not in DIMENSIONS:
            return JSONResponse(
                {"detail": f"unknown dimension {dimension!r}"}, status_code=400
            )
        try:
            start = _parse_bound(raw_from, end_of_day=False)
            end = _parse_bound(to, end_of_day=True)
        except ValueError as exc:
            return JSONResponse({"detail": str(exc)}, status_code=400)
        if start is not None and end is not None and start > end:
            return JSONResponse({"detail": "from is after to"}, status_code=400)
        bucket_seconds = bucket or config.thresholds.bucket_seconds
        if bucket_seconds <= 0:
            return JSONResponse({"detail": "bucket must be positive"}, status_code=400)
        series = store.class_aggregate(start, end, bucket_seconds)
        return _envelope(
            {
                "dimension": dimension,
                "bucket_seconds": bucket_seconds,
                "series": [
                    {"bucket_start": bucket_start.isoformat(), "value": values[dimension]}
                    for bucket_start, values in series.items()
                ],
                "course_events": _course_events_between(start, end),
            }
        )

    def _get_record(student_id: str):
        record = store.get_record(student_id)
        if record is None:
            return None, JSONResponse(
                {"detail": f"unknown student {student_id!r}"}, status_code=404
            )
        return record, None

    @app.get("/api/students")
    def students():
        return _envelope({"student_ids": store.student_ids()})

    @app.get("/api/students/{student_id}/affect")
    def student_affect(student_id: str):
        record, error = _get_record(student_id)
        if error:
            return error
        return _envelope(
            {
                "student_id": student_id,
                "points": [p.as_dict() for p in record.metric_points],
                "course_events": _course_events_between(None, None),
            }
        )

    @app.get("/api/students/{student_id}/bloom")
    def student_bloom(student_id: str):
        record, error = _get_record(student_id)
        if error:
            return error
        return _envelope(
            {
                "student_id": student_id,
                "progression": [
                    {"timestamp": ts.isoformat(), "level": level.label}
                    for ts, level in progression_series(record)
                ],
            }
        )

    @app.get("/api/students/{student_id}/study-methods")
    def student_study_methods(student_id: str):
        record, error = _get_record(student_id)
        if error:
            return error
        return _envelope(
            {"student_id": student_id, "methods": record.study_methods.as_dict()}
        )

    @app.get("/api/students/{student_id}/topics")
    def student_topics(student_id: str):
        record, error = _get_record(student_id)
        if error:
            return error
        return _envelope({"student_id": student_id, "topics": store.dedup_topics(student_id)})

    @app.get("/api/class/topics")
    def class_topics():
        return _envelope({"topics": store.dedup_topics()})

    @app.get("/api/class/study-methods")
    def class_study_methods():
        return _envelope({"methods": store.class_study_methods().as_dict()})

    @app.get("/api/quizzes/{quiz_id}")
    def quiz_detail(quiz_id: str):
        attempts = store.find_quiz(quiz_id)
        if not attempts:
            return JSONResponse({"detail": f"unknown quiz {quiz_id!r}"}, status_code=404)
        payload = []
        for student_id, record in attempts:
            total, per_question, (correct, out_of) = quiz_stats(record)
            payload.append(
                {
                    "student_id": student_id,
                    "topic": record.topic,
                    "started": record.started.isoformat(),
                    "completed": record.completed.isoformat(),
                    "total_seconds": total,
                    "per_question_seconds": per_question,
                    "correct_flags": [q.correct for q in record.per_question],
                    "score": {"correct": correct, "total": out_of},
                }
            )
        return _envelope({"quiz_id": quiz_id, "attempts": payload})

    if frontend_dir:
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="dashboard")

    return app
