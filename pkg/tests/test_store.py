import json
import os

import pytest
from hypothesis import given, strategies as st

from nrl import store
from nrl.checks import PrimorialScan, RobinScan
from nrl.runner import ScanRunner, build_scan
from nrl.store import (
    CheckpointVersionError, ResultRow, ScanCheckpoint, emit_rows, read_checkpoint,
    read_rows, write_checkpoint,
)

floats = st.floats(allow_nan=False)


def row(i, v=0.5):
    return ResultRow("s", i, repr(v), repr(-v), repr(2 * v), repr(1e-17), "HOLDS")


@given(floats)
def test_decimal_text_roundtrips_binary(x):
    assert float(store._num(x)) == x


def test_empty_stream_is_header_only(tmp_path):
    p = emit_rows([], tmp_path / "r.csv")
    assert p.read_text() == ",".join(store.ROW_FIELDS) + "\n"
    assert emit_rows([], tmp_path / "r.jsonl", "jsonl").read_text() == ""


def test_two_rows_in_subject_order(tmp_path):
    p = emit_rows([row(1), row(2)], tmp_path / "r.csv")
    lines = p.read_text().splitlines()
    assert len(lines) == 3 and lines[1].startswith("s,1,") and lines[2].startswith("s,2,")


@given(st.lists(floats, min_size=0, max_size=20))
def test_csv_and_jsonl_parse_back_identically(tmp_path_factory, xs):
    d = tmp_path_factory.mktemp("rows")
    rows = [row(i, x) for i, x in enumerate(xs)]
    a = read_rows(emit_rows(rows, d / "r.csv"), "csv")
    b = read_rows(emit_rows(rows, d / "r.jsonl", "jsonl"), "jsonl")
    assert a == b == rows


def test_quoting_is_rfc4180(tmp_path):
    r = ResultRow('id,"x"', 1, "0.1", "0.2", "0.3", "0.0", "HOLDS")
    p = emit_rows([r], tmp_path / "q.csv")
    assert '"id,""x"""' in p.read_text()
    assert read_rows(p) == [r]


def _ck(**kw):
    base = dict(scan_id="t", kind="nicolas", params={"a": 1}, cursor=5,
                state={"x": "0.1"}, rows_path="t.rows.csv", rows_offset=10,
                rows_format="csv", rows_policy="all", created_at=None)
    base.update(kw)
    return ScanCheckpoint(**base)


def test_checkpoint_roundtrip(tmp_path):
    ck = _ck()
    write_checkpoint(tmp_path, ck)
    assert read_checkpoint(tmp_path, "t") == ck


def test_checkpoint_version_mismatch(tmp_path):
    write_checkpoint(tmp_path, _ck())
    p = store.checkpoint_path(tmp_path, "t")
    doc = json.loads(p.read_text())
    doc["schema_version"] = 2
    p.write_text(json.dumps(doc))
    with pytest.raises(CheckpointVersionError):
        read_checkpoint(tmp_path, "t")


def test_interrupted_checkpoint_write_keeps_previous(tmp_path, monkeypatch):
    write_checkpoint(tmp_path, _ck(cursor=5))

    def boom(*a, **k):
        raise OSError("simulated crash before rename")

    monkeypatch.setattr(store.os, "replace", boom)
    with pytest.raises(OSError):
        write_checkpoint(tmp_path, _ck(cursor=99))
    monkeypatch.undo()
    assert read_checkpoint(tmp_path, "t").cursor == 5
    assert [p.name for p in tmp_path.iterdir()] == ["t.checkpoint.json"]


def test_scan_rebuilds_from_params():
    for scan in (PrimorialScan("clm", 3, 50), RobinScan(10, 500, block=64)):
        again = build_scan(scan.params, scan.state())
        assert again.params == scan.params and again.cursor == scan.cursor


def test_rows_policy_failures(tmp_path):
    s = ScanRunner(RobinScan(2, 6000), "r", tmp_path, rows="failures",
                   timestamps=False).run()
    rows = read_rows(tmp_path / "r.rows.csv")
    assert [r.subject for r in rows if r.status == "FAILS"] == [v.subject for v in s.failures]
    assert all(r.status != "HOLDS" for r in rows)
