"""Drive a scan to completion with row output and periodic checkpoints."""

from __future__ import annotations

import time
from pathlib import Path
from typing import Callable

from .checks import PrimorialScan, RobinScan, ScanSummary, Status, summary_state
from .store import (
    ResultRow, RowWriter, ScanCheckpoint, now_iso, read_checkpoint, write_checkpoint,
    write_json,
)

ROW_POLICIES = ("all", "failures", "none")


def build_scan(params: dict, state: dict | None = None, workers: int = 1):
    kind = params["kind"]
    if kind == "robin":
        return RobinScan(params["lo"], params["hi"], params["precision"],
                         block=params["block"], workers=workers,
                         ceiling=params["ceiling"], state=state)
    return PrimorialScan(kind, params["k_lo"], params["k_hi"], params["stride"],
                         params["precision"], params["ceiling"], state=state)


def summary_doc(scan_id: str, summary: ScanSummary, params: dict,
                timestamps: bool = True) -> dict:
    doc = {"scan_id": scan_id, "params": params, **summary_state(summary)}
    doc["wall_time"] = summary.wall_time if timestamps else None
    return doc


def _keep(policy: str, status: Status) -> bool:
    if policy == "all":
        return True
    if policy == "failures":
        return status is not Status.HOLDS
    return False


class ScanRunner:
    """One scan, one rows file, one checkpoint; single writer per scan_id.

    ``on_rows`` is called after each batch of rows is written and before
    any checkpoint for that batch; tests use it to inject crashes.
    """

    def __init__(self, scan, scan_id: str, out_dir: Path, fmt: str = "csv",
                 rows: str = "all", checkpoint_every: int = 10**6,
                 checkpoint_seconds: float = 30.0, timestamps: bool = True,
                 on_rows: Callable[[int], None] | None = None,
                 _resume_offset: int | None = None):
        if rows not in ROW_POLICIES:
            raise ValueError(f"unknown rows policy {rows!r}")
        self.scan, self.scan_id = scan, scan_id
        self.out_dir = Path(out_dir)
        self.fmt, self.rows = fmt, rows
        self.every, self.seconds = checkpoint_every, checkpoint_seconds
        self.timestamps = timestamps
        self.on_rows = on_rows
        self.rows_path = self.out_dir / f"{scan_id}.rows.{fmt}"
        self.summary_path = self.out_dir / f"{scan_id}.summary.json"
        self.writer = (RowWriter(self.rows_path, fmt, _resume_offset)
                       if rows != "none" else None)

    @classmethod
    def resume(cls, out_dir: Path, scan_id: str, workers: int = 1, **kw) -> "ScanRunner":
        ck = read_checkpoint(out_dir, scan_id)
        scan = build_scan(ck.params, ck.state, workers)
        return cls(scan, scan_id, out_dir, ck.rows_format, ck.rows_policy,
                   _resume_offset=ck.rows_offset if ck.rows_policy != "none" else None,
                   **kw)

    def checkpoint(self, done: bool = False) -> None:
        offset = self.writer.sync() if self.writer else 0
        ck = ScanCheckpoint(
            self.scan_id, self.scan.params["kind"], self.scan.params,
            self.scan.cursor, self.scan.state(),
            self.rows_path.name if self.writer else None, offset, self.fmt, self.rows,
            done, now_iso() if self.timestamps else None)
        write_checkpoint(self.out_dir, ck)

    def run(self) -> ScanSummary:
        t0 = last = time.monotonic()
        since = 0
        try:
            if not self.scan.done:
                self.checkpoint()
            while not self.scan.done:
                verdicts = self.scan.step()
                if self.writer:
                    self.writer.write([ResultRow.from_verdict(self.scan_id, v)
                                       for v in verdicts if _keep(self.rows, v.status)])
                since += len(verdicts)
                if self.on_rows is not None:
                    self.on_rows(self.scan.cursor)
                if since >= self.every or time.monotonic() - last >= self.seconds:
                    self.checkpoint()
                    since, last = 0, time.monotonic()
            self.scan.summary.wall_time = time.monotonic() - t0
            self.checkpoint(done=True)
        finally:
            self.scan.close()
            if self.writer:
                self.writer.close()
        write_json(self.summary_path, summary_doc(self.scan_id, self.scan.summary,
                                                  self.scan.params, self.timestamps))
        return self.scan.summary
