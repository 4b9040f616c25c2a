# Pydantic records stored in JSONL files
from typing import Any, Dict, List, Optional
from pydantic import BaseModel, Field

from confsweep import __version__


class ConfigurationRecord(BaseModel):
    # One configuration per line; optional fields omitted when unset
    n: int
    k: int
    lines: List[List[int]]
    history: Optional[List[Dict[str, Any]]] = None
    members: Optional[int] = None
    self_dual: Optional[bool] = None


class RunManifest(BaseModel):
    # Header line of every output file; volatile statistics are logged instead
    tool: str = "confsweep"
    version: str = __version__
    subcommand: str
    n: Optional[int] = None
    k: Optional[int] = None
    flags: Dict[str, Any] = Field(default_factory=dict)
    input: Optional[str] = None


class CheckpointHeader(BaseModel):
    # Frontier of subtree tasks, each given by its event history
    n: int
    k: int
    split_depth: int
    tasks: List[List[Dict[str, Any]]]


class CheckpointEntry(BaseModel):
    # Records emitted by one finished task
    task: int
    records: List[ConfigurationRecord]
