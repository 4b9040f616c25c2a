# Command line surface and exit codes
import json

import pytest

from confsweep.main import run
from confsweep.storage import ConfigurationRecord, JsonlStore, RunManifest


@pytest.fixture
def raw_9_3(tmp_path):
    # Raw sweep output for (9_3) written through the CLI
    path = tmp_path / "raw.jsonl"
    assert run(["enumerate", "--n", "9", "--k", "3", "--jobs", "1", "--split-depth", "1", "--out", str(path)]) == 0
    return path


def read_lines(path):
    return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]


def test_partitions_listing(capsys):
    assert run(["partitions", "--n", "17", "--k", "4"]) == 0

    out = capsys.readouterr().out.splitlines()
    assert len(out) == 8
    assert out[0] == "4,0,0,0"
    assert out[-1] == "1,1,1,1"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["partitions", "--n", "x", "--k", "3"],
        ["enumerate", "--k", "3"],
        ["enumerate", "--n", "9", "--k", "3", "--jobs", "0"],
        ["enumerate", "--n", "9", "--k", "3", "--jobs", "two"],
        ["reduce", "--jobs", "-1"],
    ],
)
def test_usage_errors(argv):
    assert run(argv) == 2


def test_internal_errors_exit_one():
    assert run(["enumerate", "--n", "6", "--k", "3"]) == 1
    assert run(["oracle", "--n", "11", "--k", "3"]) == 1


def test_enumerate_writes_manifest_first(raw_9_3):
    lines = read_lines(raw_9_3)

    assert lines[0]["manifest"]["subcommand"] == "enumerate"
    assert lines[0]["manifest"]["n"] == 9
    assert len(lines) > 1
    assert all("history" in record for record in lines[1:])


@pytest.mark.parametrize("jobs", ["2", "8"])
def test_enumerate_output_independent_of_jobs(tmp_path, raw_9_3, jobs):
    path = tmp_path / "parallel.jsonl"

    assert run(["enumerate", "--n", "9", "--k", "3", "--jobs", jobs, "--split-depth", "1", "--out", str(path)]) == 0
    assert path.read_bytes() == raw_9_3.read_bytes()


def test_reduce_pipeline(tmp_path, raw_9_3):
    out = tmp_path / "classes.jsonl"
    report = tmp_path / "report.json"

    assert run(["reduce", "--in", str(raw_9_3), "--out", str(out), "--report", str(report)]) == 0

    lines = read_lines(out)
    assert lines[0]["manifest"]["subcommand"] == "reduce"
    classes = lines[1:]
    assert len(classes) == 3
    assert all(record["self_dual"] for record in classes)
    assert sum(record["members"] for record in classes) == len(read_lines(raw_9_3)) - 1
    summary = json.loads(report.read_text(encoding="utf-8"))
    assert summary["classes"] == 3
    assert summary["matches_known"] is True
    assert summary["levels"]


def test_reduce_empty_7_3(tmp_path):
    raw = tmp_path / "raw.jsonl"
    out = tmp_path / "classes.jsonl"

    assert run(["enumerate", "--n", "7", "--k", "3", "--out", str(raw)]) == 0
    assert run(["reduce", "--in", str(raw), "--out", str(out)]) == 0
    assert len(read_lines(out)) == 1


def test_verify_records(capsys, raw_9_3):
    assert run(["verify", "--in", str(raw_9_3)]) == 0

    reports = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert reports
    assert all(report["valid"] for report in reports)
    assert reports[0]["total_two_crossings"] == 9


def test_verify_invalid_record(tmp_path, capsys):
    path = tmp_path / "bad.jsonl"
    path.write_text(json.dumps({"n": 3, "k": 2, "lines": [[0, 1], [0, 1], [1, 2]]}) + "\n", encoding="utf-8")

    assert run(["verify", "--in", str(path)]) == 1
    (report,) = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert not report["valid"]


def test_verify_table(fixtures_dir, capsys):
    assert run(["verify", "--table", str(fixtures_dir / "topological_17_4.txt")]) == 0
    assert json.loads(capsys.readouterr().out)["per_line_two_crossings"] == 4


def test_verify_bad_table(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("A B\nA C\n", encoding="utf-8")

    assert run(["verify", "--table", str(path)]) == 1


def test_unreadable_record(tmp_path):
    path = tmp_path / "broken.jsonl"
    path.write_text('{"n": 7, "k": 3, "lines": \n', encoding="utf-8")

    assert run(["verify", "--in", str(path)]) == 1


def test_oracle_prints_count(tmp_path, capsys):
    out = tmp_path / "oracle.jsonl"

    assert run(["oracle", "--n", "7", "--k", "3", "--out", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "1"
    assert len(read_lines(out)) == 2


def test_verify_real(tmp_path, pappus, fixtures_dir, capsys):
    config = tmp_path / "pappus.jsonl"
    record = ConfigurationRecord(n=9, k=3, lines=[list(line) for line in pappus.lines])
    JsonlStore(str(config)).write(RunManifest(subcommand="verify-real"), [record])

    argv = ["verify-real", "--config", str(config), "--coords", str(fixtures_dir / "pappus_coords.json")]
    assert run(argv) == 0
    assert json.loads(capsys.readouterr().out) == {"realized": True}


def test_draw_command(tmp_path, raw_9_3):
    out_dir = tmp_path / "svg"

    assert run(["draw", "--in", str(raw_9_3), "--out-dir", str(out_dir)]) == 0
    assert len(list(out_dir.glob("config_*.svg"))) == len(read_lines(raw_9_3)) - 1
