from .table import (
    PartitionTable,
    SegmentTuple,
    dihedral_max,
    format_table,
    partition_table,
    rank,
)

__all__ = [
    "PartitionTable",
    "SegmentTuple",
    "dihedral_max",
    "format_table",
    "partition_table",
    "rank",
]
