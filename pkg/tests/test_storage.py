# JSONL record streams and checkpoint files
import pytest

from confsweep.errors import RecordFormatError
from confsweep.storage import (
    CheckpointFile,
    CheckpointHeader,
    JsonlStore,
    RunManifest,
    make_record,
    record_configuration,
    record_line,
)


def test_record_line_omits_unset_fields(fano):
    line = record_line(make_record(fano))

    assert line.startswith('{"n":7,"k":3,"lines":[[0,1,2],')
    assert "history" not in line
    assert "members" not in line


def test_store_round_trip(tmp_path, pappus):
    path = tmp_path / "out.jsonl"
    records = [make_record(pappus, members=2, self_dual=True)]

    assert JsonlStore(str(path)).write(RunManifest(subcommand="reduce", n=9, k=3), records) == 1

    (loaded,) = list(JsonlStore(str(path)).read_records())
    assert loaded == records[0]
    assert record_configuration(loaded).n == 9


def test_store_skips_blank_lines(tmp_path, fano):
    path = tmp_path / "gaps.jsonl"
    path.write_text("\n" + record_line(make_record(fano)) + "\n\n", encoding="utf-8")

    assert len(list(JsonlStore(str(path)).read_records())) == 1


def test_store_rejects_bad_records(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"n": 7}\n', encoding="utf-8")

    with pytest.raises(RecordFormatError):
        list(JsonlStore(str(path)).read_records())


def test_missing_checkpoint(tmp_path):
    assert CheckpointFile(str(tmp_path / "none.ckpt")).load() is None


def test_checkpoint_entries(tmp_path, fano):
    checkpoint = CheckpointFile(str(tmp_path / "run.ckpt"))
    checkpoint.start(CheckpointHeader(n=7, k=3, split_depth=0, tasks=[[{"kind": "base", "lam": [0, 0, 0]}]]))
    checkpoint.append(0, [make_record(fano)])

    header, done = checkpoint.load()

    assert header.tasks[0][0]["kind"] == "base"
    assert list(done) == [0]
    assert done[0][0].lines[0] == [0, 1, 2]
