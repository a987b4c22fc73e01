"""Line-delimited JSON and CSV output records (schema version "1")."""
from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Iterable, List, TextIO

__all__ = ["SCHEMA_VERSION", "KINDS", "OutputRecord", "write_jsonl", "read_jsonl", "write_csv", "read_csv"]

SCHEMA_VERSION = "1"
KINDS = ("finding", "bound", "witness", "table_row", "skip")

if hasattr(sys, "set_int_max_str_digits"):
    # witnesses and verified values can run to tens of thousands of digits
    sys.set_int_max_str_digits(0)


@dataclass(frozen=True)
class OutputRecord:
    kind: str
    payload: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown record kind {self.kind!r}")

    def to_json(self) -> str:
        return json.dumps(
            {"schema_version": self.schema_version, "kind": self.kind, "payload": self.payload},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, line: str) -> "OutputRecord":
        d = json.loads(line)
        return cls(d["kind"], d["payload"], d["schema_version"])


def write_jsonl(records: Iterable[OutputRecord], out: TextIO) -> None:
    for rec in records:
        out.write(rec.to_json() + "\n")
        out.flush()


def read_jsonl(text: str) -> List[OutputRecord]:
    return [OutputRecord.from_json(line) for line in text.splitlines() if line.strip()]


def _cell(value) -> str:
    if isinstance(value, str):
        if not value.isprintable():
            return json.dumps(value)
        try:
            json.loads(value)
        except ValueError:
            return value if value else '""'
        return json.dumps(value)
    return json.dumps(value, sort_keys=True)


def _uncell(text: str):
    try:
        return json.loads(text)
    except ValueError:
        return text


def write_csv(records: Iterable[OutputRecord], out: TextIO) -> None:
    """One CSV table for all records; columns absent from a record are left empty."""
    records = list(records)
    keys: List[str] = []
    for rec in records:
        for k in rec.payload:
            if k not in keys:
                keys.append(k)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["schema_version", "kind"] + keys)
    for rec in records:
        writer.writerow(
            [rec.schema_version, rec.kind]
            + [_cell(rec.payload[k]) if k in rec.payload else "" for k in keys]
        )


def read_csv(text: str) -> List[OutputRecord]:
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        return []
    header = rows[0]
    out = []
    for row in rows[1:]:
        payload = {k: _uncell(v) for k, v in zip(header[2:], row[2:]) if v != ""}
        out.append(OutputRecord(row[1], payload, row[0]))
    return out
