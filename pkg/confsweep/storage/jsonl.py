# JSONL persistence for configuration streams and checkpoints
import json
import os
import sys
from typing import IO, Dict, Iterable, Iterator, List, Optional, Tuple

import structlog
from pydantic import ValidationError

from confsweep.errors import RecordFormatError
from confsweep.incidence import Configuration, from_record, to_record
from confsweep.storage.models import (
    CheckpointEntry,
    CheckpointHeader,
    ConfigurationRecord,
    RunManifest,
)


logger = structlog.get_logger(__name__)


def make_record(c: Configuration, **extra) -> ConfigurationRecord:
    # Canonical record with optional history/members/self_dual
    return ConfigurationRecord(**to_record(c), **extra)


def record_configuration(record: ConfigurationRecord) -> Configuration:
    # Validated configuration from a record
    return from_record({"n": record.n, "k": record.k, "lines": record.lines})


def record_line(record: ConfigurationRecord) -> str:
    return record.model_dump_json(exclude_none=True)


def manifest_line(manifest: RunManifest) -> str:
    return json.dumps({"manifest": manifest.model_dump()}, separators=(",", ":"), sort_keys=False)


class JsonlStore:
    # Reads and writes record streams; "-" or None means stdin/stdout

    def __init__(self, path: Optional[str] = None):
        self.path = path if path not in (None, "-") else None

    def _open_read(self) -> IO[str]:
        if self.path is None:
            return sys.stdin
        return open(self.path, "r", encoding="utf-8")

    def read_records(self) -> Iterator[ConfigurationRecord]:
        # Skip manifest and blank lines
        stream = self._open_read()
        try:
            for number, raw in enumerate(stream, start=1):
                raw = raw.strip()
                if not raw:
                    continue
                try:
                    data = json.loads(raw)
                    if "manifest" in data:
                        continue
                    yield ConfigurationRecord.model_validate(data)
                except (json.JSONDecodeError, ValidationError, TypeError) as e:
                    logger.error("Unreadable record", path=self.path or "-", line=number, error=str(e))
                    raise RecordFormatError(f"line {number}: {e}") from e
        finally:
            if stream is not sys.stdin:
                stream.close()

    def write(self, manifest: RunManifest, records: Iterable[ConfigurationRecord]) -> int:
        # Manifest first, then one record per line; returns the record count
        stream = sys.stdout if self.path is None else open(self.path, "w", encoding="utf-8")
        count = 0
        try:
            stream.write(manifest_line(manifest) + "\n")
            for record in records:
                stream.write(record_line(record) + "\n")
                count += 1
            stream.flush()
        finally:
            if stream is not sys.stdout:
                stream.close()
        logger.info("Records written", path=self.path or "-", count=count)
        return count


class CheckpointFile:
    # Header with the task frontier, then one appended entry per finished task

    def __init__(self, path: str):
        self.path = path

    def load(self) -> Optional[Tuple[CheckpointHeader, Dict[int, List[ConfigurationRecord]]]]:
        if not os.path.exists(self.path):
            return None
        header: Optional[CheckpointHeader] = None
        done: Dict[int, List[ConfigurationRecord]] = {}
        kept = 0
        with open(self.path, "r", encoding="utf-8") as stream:
            for raw in stream:
                line = raw.strip()
                if not line:
                    kept += len(raw.encode("utf-8"))
                    continue
                try:
                    data = json.loads(line)
                except json.JSONDecodeError:
                    # Torn last line from an interrupted run; cut it so appends start clean
                    logger.warning("Dropping truncated checkpoint line", path=self.path)
                    with open(self.path, "r+b") as raw_stream:
                        raw_stream.truncate(kept)
                    break
                kept += len(raw.encode("utf-8"))
                if header is None:
                    header = CheckpointHeader.model_validate(data["checkpoint"])
                else:
                    entry = CheckpointEntry.model_validate(data)
                    done[entry.task] = entry.records
        if header is None:
            return None
        logger.info("Checkpoint loaded", path=self.path, tasks=len(header.tasks), finished=len(done))
        return header, done

    def start(self, header: CheckpointHeader) -> None:
        with open(self.path, "w", encoding="utf-8") as stream:
            stream.write(json.dumps({"checkpoint": header.model_dump()}, separators=(",", ":")) + "\n")

    def append(self, task: int, records: List[ConfigurationRecord]) -> None:
        entry = CheckpointEntry(task=task, records=records)
        with open(self.path, "a", encoding="utf-8") as stream:
            stream.write(entry.model_dump_json(exclude_none=True) + "\n")
            stream.flush()
            os.fsync(stream.fileno())
