"""classpulse command line: serve the analytics API, simulate cohorts."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .affect import LexiconProvider, RemoteProvider
from .config import CourseConfig
from .simulator import ScenarioSpec, cohort_as_json, generate_cohort
from .store import StudentStore


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="classpulse")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the analytics API service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--config", help="course config JSON (defaults to the built-in course)")
    serve.add_argument("--store-path", help="snapshot file; loaded at start, saved after ingest")
    serve.add_argument("--provider", choices=["lexicon", "remote"], default="lexicon")
    serve.add_argument("--remote-endpoint", help="chat-completions URL for --provider remote")
    serve.add_argument("--model", default="gpt-4")
    serve.add_argument("--token", help="optional static bearer token for /api routes")
    serve.add_argument("--frontend-dir", help="static dashboard assets served under /")

    simulate = sub.add_parser("simulate", help="generate a synthetic cohort")
    simulate.add_argument("--seed", type=int, default=42)
    simulate.add_argument("--out", required=True, help="output directory for batch files")
    simulate.add_argument("--scenario", help="scenario spec JSON")
    simulate.add_argument("--config", help="course config JSON for syllabus topics")
    return parser


def _make_provider(args, config: CourseConfig):
    if args.provider == "remote":
        if not args.remote_endpoint:
            raise SystemExit("--provider remote requires --remote-endpoint")
        return RemoteProvider(endpoint=args.remote_endpoint, model=args.model)
    return LexiconProvider(config.lexicon)


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    config = CourseConfig.from_file(args.config) if args.config else CourseConfig.default()
    store = StudentStore()
    if args.store_path and os.path.exists(args.store_path):
        store = StudentStore.snapshot_load(args.store_path)
    app = create_app(
        config=config,
        store=store,
        provider=_make_provider(args, config),
        snapshot_path=args.store_path,
        auth_token=args.token,
        frontend_dir=args.frontend_dir,
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def cmd_simulate(args) -> int:
    config = CourseConfig.from_file(args.config) if args.config else CourseConfig.default()
    if args.scenario:
        spec = ScenarioSpec.from_file(args.scenario)
        if args.seed != 42:
            spec = ScenarioSpec.from_mapping({**json.load(open(args.scenario)), "seed": args.seed})
    else:
        spec = ScenarioSpec(seed=args.seed)
    batches = generate_cohort(spec, config)
    os.makedirs(args.out, exist_ok=True)
    for index, serialized in enumerate(cohort_as_json(batches)):
        path = os.path.join(args.out, f"session-{index + 1:04d}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(serialized)
            fh.write("\n")
    print(f"wrote {len(batches)} session batches to {args.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "serve":
        return cmd_serve(args)
    if args.command == "simulate":
        return cmd_simulate(args)
    return 2


if __name__ == "__main__":
    sys.exit(main())
