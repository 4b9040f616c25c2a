from .models import CheckpointEntry, CheckpointHeader, ConfigurationRecord, RunManifest
from .jsonl import (
    CheckpointFile,
    JsonlStore,
    make_record,
    manifest_line,
    record_configuration,
    record_line,
)

__all__ = [
    "CheckpointEntry",
    "CheckpointFile",
    "CheckpointHeader",
    "ConfigurationRecord",
    "JsonlStore",
    "RunManifest",
    "make_record",
    "manifest_line",
    "record_configuration",
    "record_line",
]
