"""Append-only log format: envelope validation, ordering, concurrency."""

from __future__ import annotations

import io
import json
import threading

import pytest

from elosteer import MalformedEntryError
from elosteer.eventlog import (
    CATALOG_STREAM,
    RECORD_VERSION,
    EventLogWriter,
    next_seq_state,
    parse_record,
    read_records,
)


def make_line(**overrides) -> str:
    record = {"v": 1, "learner": "L1", "seq": 1, "kind": "register", "ts": 10.5, "data": {}}
    record.update(overrides)
    return json.dumps(record)


class TestParseRecord:
    def test_round_trip(self):
        record = parse_record(make_line(data={"group": "control"}), 1)
        assert record["learner"] == "L1"
        assert record["data"] == {"group": "control"}
        assert record["v"] == RECORD_VERSION

    @pytest.mark.parametrize(
        "line",
        [
            "not json",
            "[]",
            json.dumps({"v": 1}),
            make_line(v=2),
            make_line(seq=0),
            make_line(seq=1.5),
            make_line(seq="1"),
            make_line(learner=7),
            make_line(learner=""),
            make_line(kind=""),
            make_line(ts="now"),
            make_line(data=[1, 2]),
        ],
    )
    def test_malformed_lines(self, line):
        with pytest.raises(MalformedEntryError):
            parse_record(line, 3)

    def test_extra_key_rejected(self):
        raw = json.loads(make_line())
        raw["extra"] = True
        with pytest.raises(MalformedEntryError):
            parse_record(json.dumps(raw), 1)

    def test_error_carries_line_number(self):
        with pytest.raises(MalformedEntryError, match="line 42"):
            parse_record("oops", 42)


class TestReadRecords:
    def test_sequences_enforced_per_learner(self):
        lines = [
            make_line(learner="A", seq=1),
            make_line(learner="B", seq=1),
            make_line(learner="A", seq=2),
            make_line(learner="B", seq=2),
        ]
        records = list(read_records(io.StringIO("\n".join(lines) + "\n")))
        assert [(r["learner"], r["seq"]) for r in records] == [
            ("A", 1),
            ("B", 1),
            ("A", 2),
            ("B", 2),
        ]

    def test_gap_rejected(self):
        lines = [make_line(seq=1), make_line(seq=3)]
        with pytest.raises(MalformedEntryError, match="seq"):
            list(read_records(io.StringIO("\n".join(lines))))

    def test_must_start_at_one(self):
        with pytest.raises(MalformedEntryError):
            list(read_records(io.StringIO(make_line(seq=2))))

    def test_blank_lines_skipped(self):
        source = io.StringIO(make_line() + "\n\n" + make_line(seq=2) + "\n")
        assert len(list(read_records(source))) == 2


class TestEventLogWriter:
    def test_appends_compact_sorted_json(self):
        sink = io.StringIO()
        writer = EventLogWriter(sink)
        record = writer.append("L1", "register", {"group": "none"}, ts=3.25)
        line = sink.getvalue().rstrip("\n")
        assert line == json.dumps(record, sort_keys=True, separators=(",", ":"))
        assert '"data":{"group":"none"}' in line
        assert record["seq"] == 1

    def test_sequences_count_up_per_learner(self):
        writer = EventLogWriter(io.StringIO())
        assert writer.append("A", "x", {}, ts=0.0)["seq"] == 1
        assert writer.append("B", "x", {}, ts=0.0)["seq"] == 1
        assert writer.append("A", "x", {}, ts=0.0)["seq"] == 2
        # the state holds the next seq to hand out
        assert writer.seq_state == {"A": 3, "B": 2}

    def test_resume_from_existing_log(self):
        sink = io.StringIO()
        writer = EventLogWriter(sink)
        writer.append("A", "x", {}, ts=0.0)
        writer.append("A", "x", {}, ts=1.0)

        state = next_seq_state(read_records(io.StringIO(sink.getvalue())))
        resumed = EventLogWriter(io.StringIO(), seq_state=state)
        assert resumed.append("A", "x", {}, ts=2.0)["seq"] == 3

    def test_catalog_stream_is_reserved_name(self):
        writer = EventLogWriter(io.StringIO())
        record = writer.append(CATALOG_STREAM, "catalog-add", {"id": "e1"}, ts=0.0)
        assert record["learner"] == "_catalog"

    def test_float_timestamps_survive_round_trip(self):
        sink = io.StringIO()
        writer = EventLogWriter(sink)
        ts = 1723903999.1234567
        writer.append("A", "x", {}, ts=ts)
        (record,) = list(read_records(io.StringIO(sink.getvalue())))
        assert record["ts"] == ts  # bit-exact

    def test_concurrent_appends_keep_contiguous_sequences(self):
        sink = io.StringIO()
        writer = EventLogWriter(sink)

        def work(learner: str):
            for _ in range(100):
                writer.append(learner, "x", {}, ts=0.0)

        threads = [threading.Thread(target=work, args=(f"L{i % 4}",)) for i in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        records = list(read_records(io.StringIO(sink.getvalue())))
        assert len(records) == 800
        # read_records itself enforces per-learner contiguity; double-check totals
        per_learner: dict[str, int] = {}
        for record in records:
            per_learner[record["learner"]] = record["seq"]
        assert per_learner == {"L0": 200, "L1": 200, "L2": 200, "L3": 200}
