"""Append-only event log: the single source of truth for service state.

Every record is one line of JSON with a fixed envelope::

    {"v": 1, "learner": "L0001", "seq": 3, "kind": "attempt",
     "ts": 12.0, "data": {...}}

``seq`` is a per-learner counter starting at 1 and increasing by exactly
one per record, so gaps and reordering are detectable.  Catalog changes
ride the reserved stream id ``_catalog`` (learner ids may not start with
an underscore).  ``ts`` is a unix timestamp kept as a raw float so that a
replayed profile is bit-identical to the live one; the HTTP layer formats
timestamps for presentation instead.
"""

from __future__ import annotations

import json
import threading
from typing import IO, Iterable, Iterator

from .errors import MalformedEntryError

__all__ = [
    "RECORD_VERSION",
    "CATALOG_STREAM",
    "EventLogWriter",
    "read_records",
    "parse_record",
    "next_seq_state",
]

RECORD_VERSION = 1

#: Reserved stream id for catalog administration records.
CATALOG_STREAM = "_catalog"

_ENVELOPE_KEYS = {"v", "learner", "seq", "kind", "ts", "data"}


def parse_record(line: str, lineno: int = 0) -> dict:
    """Decode and validate one log line."""
    where = f"line {lineno}: " if lineno else ""
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedEntryError(f"{where}invalid JSON: {exc}") from None
    if not isinstance(record, dict) or set(record) != _ENVELOPE_KEYS:
        raise MalformedEntryError(f"{where}record must have exactly keys {sorted(_ENVELOPE_KEYS)}")
    if record["v"] != RECORD_VERSION:
        raise MalformedEntryError(f"{where}unsupported record version {record['v']!r}")
    if not isinstance(record["learner"], str) or not record["learner"]:
        raise MalformedEntryError(f"{where}learner id must be a non-empty string")
    if not isinstance(record["seq"], int) or record["seq"] < 1:
        raise MalformedEntryError(f"{where}seq must be a positive integer")
    if not isinstance(record["kind"], str) or not record["kind"]:
        raise MalformedEntryError(f"{where}kind must be a non-empty string")
    if not isinstance(record["ts"], (int, float)) or isinstance(record["ts"], bool):
        raise MalformedEntryError(f"{where}ts must be a number")
    if not isinstance(record["data"], dict):
        raise MalformedEntryError(f"{where}data must be an object")
    return record


def read_records(source: IO[str] | Iterable[str]) -> Iterator[dict]:
    """Yield validated records from a line source, enforcing per-learner order."""
    next_seq: dict[str, int] = {}
    for lineno, line in enumerate(source, start=1):
        if not line.strip():
            continue
        record = parse_record(line, lineno)
        learner = record["learner"]
        expected = next_seq.get(learner, 1)
        if record["seq"] != expected:
            raise MalformedEntryError(
                f"line {lineno}: learner {learner!r} seq {record['seq']} "
                f"out of order (expected {expected})"
            )
        next_seq[learner] = expected + 1
        yield record


class EventLogWriter:
    """Serializes records to a text sink, assigning sequence numbers.

    ``seq_state`` seeds the per-learner counters when appending to an
    existing log (maps learner id to the next seq to hand out).
    """

    def __init__(self, sink: IO[str], seq_state: dict[str, int] | None = None):
        self._sink = sink
        self._next_seq: dict[str, int] = dict(seq_state or {})
        self._lock = threading.Lock()  # appends may come from request threads

    def append(self, learner: str, kind: str, data: dict, ts: float) -> dict:
        with self._lock:
            seq = self._next_seq.get(learner, 1)
            record = {
                "v": RECORD_VERSION,
                "learner": learner,
                "seq": seq,
                "kind": kind,
                "ts": float(ts),
                "data": data,
            }
            # Validate our own output so a bad caller cannot corrupt the log.
            parse_record(json.dumps(record))
            self._sink.write(
                json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n"
            )
            self._next_seq[learner] = seq + 1
            return record

    @property
    def seq_state(self) -> dict[str, int]:
        return dict(self._next_seq)

    def flush(self) -> None:
        flush = getattr(self._sink, "flush", None)
        if flush is not None:
            flush()


def next_seq_state(records: Iterable[dict]) -> dict[str, int]:
    """Counter state for continuing an existing log (feed it replayed records)."""
    state: dict[str, int] = {}
    for record in records:
        state[record["learner"]] = record["seq"] + 1
    return state
