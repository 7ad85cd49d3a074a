"""Command-line entry points: serve, simulate, analyze, ingest, export-dataset."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .analytics import build_report, render_report_text, report_records, score_constructs
from .errors import ElosteerError, MalformedEntryError
from .recommender import ingest_catalog
from .simulate import TrialConfig, render_trial_summary, run_trial
from .study import StudyOrchestrator


def _read_json_or_lines(path: str) -> list[dict]:
    """Accept either one JSON array or line-delimited JSON objects."""
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("["):
        data = json.loads(text)
        if not isinstance(data, list):
            raise MalformedEntryError(f"{path}: expected a JSON array")
        return data
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rows.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise MalformedEntryError(f"{path}:{lineno}: invalid JSON: {exc}") from None
    return rows


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import ApiConfig, create_app

    config = ApiConfig.from_file(args.config) if args.config else ApiConfig()
    if args.data_dir:
        config.data_dir = args.data_dir
    if args.seed is not None:
        config.study = replace(config.study, seed=args.seed)
    if args.host:
        config.host = args.host
    if args.port:
        config.port = args.port
    uvicorn.run(create_app(config), host=config.host, port=config.port, log_level="warning")
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    raw = {}
    if args.config:
        raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
    if args.seed is not None:
        raw["seed"] = args.seed
    config = TrialConfig.from_mapping(raw)
    result = run_trial(config)
    if args.log_out:
        Path(args.log_out).write_text(result.log_text, encoding="utf-8")
    print(render_trial_summary(result))
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    rows = _read_json_or_lines(args.input)
    dataset = [
        (row["group"], score_constructs(row["answers"]))
        for row in rows
        if row.get("row") == "questionnaire"
    ]
    report = build_report(dataset)
    if args.format == "text":
        print(render_report_text(report))
    else:
        for record in report_records(report):
            print(json.dumps(record, sort_keys=True))
    return 0


def _cmd_ingest(args: argparse.Namespace) -> int:
    from .service import ApiConfig, _open_log

    entries = _read_json_or_lines(args.catalog)
    exercises = list(ingest_catalog(entries))
    orch, sink = _open_log(ApiConfig(data_dir=args.data_dir))
    try:
        count = orch.ingest(exercises)
    finally:
        if sink is not None:
            sink.close()
    print(f"ingested {count} exercises into {args.data_dir}")
    return 0


def _cmd_export_dataset(args: argparse.Namespace) -> int:
    log_path = Path(args.data_dir) / "events.log"
    with log_path.open(encoding="utf-8") as fh:
        orch = StudyOrchestrator.replay(fh)
    rows = orch.export_dataset(include_post_study=args.include_post_study)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for row in rows:
            out.write(json.dumps(row, sort_keys=True) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="elosteer")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--config", help="JSON service config file")
    serve.add_argument("--data-dir", help="event log directory (persistent state)")
    serve.add_argument("--seed", type=int, help="group-assignment seed override")
    serve.add_argument("--host")
    serve.add_argument("--port", type=int)
    serve.set_defaults(func=_cmd_serve)

    simulate = sub.add_parser("simulate", help="run a synthetic study trial")
    simulate.add_argument("--config", help="JSON trial config file")
    simulate.add_argument("--seed", type=int, help="seed override")
    simulate.add_argument("--log-out", help="write the event log to this file")
    simulate.set_defaults(func=_cmd_simulate)

    analyze = sub.add_parser("analyze", help="group-comparison report from a dataset export")
    analyze.add_argument("--input", required=True, help="dataset export (JSONL or JSON array)")
    analyze.add_argument("--format", choices=("text", "records"), default="text")
    analyze.set_defaults(func=_cmd_analyze)

    ingest = sub.add_parser("ingest", help="load a catalog file into a data directory")
    ingest.add_argument("--catalog", required=True, help="exercise entries (JSON/JSONL)")
    ingest.add_argument("--data-dir", required=True)
    ingest.set_defaults(func=_cmd_ingest)

    export = sub.add_parser("export-dataset", help="shared-dataset rows from an event log")
    export.add_argument("--data-dir", required=True)
    export.add_argument("--out", help="output file (default stdout)")
    export.add_argument("--include-post-study", action="store_true")
    export.set_defaults(func=_cmd_export_dataset)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ElosteerError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
