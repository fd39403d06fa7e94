"""Checkpoints, row files and JSON reports.

Every file that must survive a crash is written to a temporary sibling,
fsync'd, and moved into place with ``os.replace``.  Row files are append
only; a checkpoint records the byte offset up to which the rows are
accounted for, and a resume truncates back to it.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

from .checks import CheckVerdict

SCHEMA_VERSION = 1
ROW_FIELDS = ("scan_id", "subject", "lhs_log", "rhs_log", "margin", "radius", "status")
FORMATS = ("csv", "jsonl")


class CheckpointVersionError(RuntimeError):
    pass


class CheckpointNotFoundError(FileNotFoundError):
    pass


# -- atomic files ----------------------------------------------------------------

def atomic_write_bytes(path: Path, data: bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def canonical_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=True) + "\n"


def write_json(path: Path, doc) -> Path:
    atomic_write_bytes(path, canonical_json(doc).encode())
    return Path(path)


# -- rows -----------------------------------------------------------------------------

def _num(x: float) -> str:
    # repr round-trips binary64 exactly
    return repr(float(x))


@dataclass(frozen=True)
class ResultRow:
    scan_id: str
    subject: int
    lhs_log: str
    rhs_log: str
    margin: str
    radius: str
    status: str

    @classmethod
    def from_verdict(cls, scan_id: str, v: CheckVerdict) -> "ResultRow":
        return cls(scan_id, v.subject, _num(v.lhs_log.value), _num(v.rhs_log.value),
                   _num(v.margin.value), _num(v.margin.radius), v.status.value)


def format_rows(rows, fmt: str, header: bool = True) -> str:
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(ROW_FIELDS)
        for r in rows:
            w.writerow([getattr(r, f) for f in ROW_FIELDS])
    elif fmt == "jsonl":
        for r in rows:
            buf.write(json.dumps(asdict(r)) + "\n")
    else:
        raise ValueError(f"unknown row format {fmt!r}; expected one of {FORMATS}")
    return buf.getvalue()


def emit_rows(rows, path: Path, fmt: str = "csv") -> Path:
    """Write a complete row file in one go."""
    atomic_write_bytes(path, format_rows(rows, fmt).encode())
    return Path(path)


def read_rows(path: Path, fmt: str = "csv") -> list[ResultRow]:
    text = Path(path).read_text()
    if fmt == "csv":
        rdr = csv.DictReader(io.StringIO(text))
        return [ResultRow(**{**r, "subject": int(r["subject"])}) for r in rdr]
    return [ResultRow(**json.loads(line)) for line in text.splitlines() if line]


class RowWriter:
    """Append-only row file whose byte offset is recorded in checkpoints."""

    def __init__(self, path: Path, fmt: str, truncate_to: int | None = None):
        if fmt not in FORMATS:
            raise ValueError(f"unknown row format {fmt!r}")
        self.path, self.fmt = Path(path), fmt
        self.path.parent.mkdir(parents=True, exist_ok=True)
        if truncate_to is None:
            self._fh = open(self.path, "wb")
            self._fh.write(format_rows([], fmt).encode())
        else:
            self._fh = open(self.path, "r+b")
            self._fh.truncate(truncate_to)
            self._fh.seek(truncate_to)

    def write(self, rows) -> None:
        if rows:
            self._fh.write(format_rows(rows, self.fmt, header=False).encode())

    def sync(self) -> int:
        """Flush to disk; returns the durable offset."""
        self._fh.flush()
        os.fsync(self._fh.fileno())
        return self._fh.tell()

    def close(self) -> None:
        if not self._fh.closed:
            self.sync()
            self._fh.close()


# -- checkpoints ---------------------------------------------------------------

@dataclass
class ScanCheckpoint:
    scan_id: str
    kind: str
    params: dict
    cursor: int
    state: dict
    rows_path: str | None
    rows_offset: int
    rows_format: str
    rows_policy: str
    done: bool = False
    created_at: str | None = None
    schema_version: int = SCHEMA_VERSION

    def to_doc(self) -> dict:
        return asdict(self)

    @classmethod
    def from_doc(cls, doc: dict) -> "ScanCheckpoint":
        v = doc.get("schema_version")
        if v != SCHEMA_VERSION:
            raise CheckpointVersionError(
                f"checkpoint schema_version {v!r} is not supported (expected {SCHEMA_VERSION})")
        return cls(**doc)


def now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def checkpoint_path(out_dir: Path, scan_id: str) -> Path:
    return Path(out_dir) / f"{scan_id}.checkpoint.json"


def write_checkpoint(out_dir: Path, ck: ScanCheckpoint) -> Path:
    return write_json(checkpoint_path(out_dir, ck.scan_id), ck.to_doc())


def read_checkpoint(out_dir: Path, scan_id: str) -> ScanCheckpoint:
    path = checkpoint_path(out_dir, scan_id)
    if not path.exists():
        raise CheckpointNotFoundError(f"no checkpoint for scan {scan_id!r} in {out_dir}")
    return ScanCheckpoint.from_doc(json.loads(path.read_text()))
