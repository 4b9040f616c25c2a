# Dihedral orbit tables of segment-length tuples
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

import structlog
from pydantic import BaseModel, ConfigDict

from confsweep.errors import NotInTable


logger = structlog.get_logger(__name__)

SegmentTuple = Tuple[int, ...]


def dihedral_max(t: Sequence[int]) -> SegmentTuple:
    # Lexicographic maximum over all rotations and reflections
    items = tuple(t)
    best = items
    for base in (items, items[::-1]):
        for shift in range(len(base)):
            candidate = base[shift:] + base[:shift]
            if candidate > best:
                best = candidate
    return best


def _compositions(total: int, parts: int) -> Iterator[SegmentTuple]:
    # All ordered tuples of non-negative integers with the given sum
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def _order_key(t: SegmentTuple) -> Tuple[SegmentTuple, SegmentTuple]:
    # Partition first, arrangement second
    return tuple(sorted(t, reverse=True)), t


class PartitionTable(BaseModel):
    # Ordered dihedral-maximal representatives for one (n, k)
    model_config = ConfigDict(frozen=True)

    n: int
    k: int
    total: int
    entries: Tuple[SegmentTuple, ...]

    def rank(self, t: Sequence[int]) -> int:
        return rank(self, t)


@lru_cache(maxsize=None)
def partition_table(n: int, k: int) -> PartitionTable:
    # All orbit representatives of k-tuples summing to n-1-k(k-1)
    total = n - 1 - k * (k - 1)
    if total < 0:
        raise NotInTable(f"n={n} is too small for k={k}")
    representatives = {dihedral_max(t) for t in _compositions(total, k)}
    entries = tuple(sorted(representatives, key=_order_key, reverse=True))
    logger.debug("Partition table built", n=n, k=k, size=len(entries))
    return PartitionTable(n=n, k=k, total=total, entries=entries)


def rank(table: PartitionTable, t: Sequence[int]) -> int:
    # Position of the orbit representative of t
    items = tuple(t)
    if len(items) != table.k or sum(items) != table.total or min(items, default=0) < 0:
        raise NotInTable(f"{list(items)} is not a {table.k}-partition of {table.total}")
    try:
        return table.entries.index(dihedral_max(items))
    except ValueError as e:
        raise NotInTable(f"{list(items)} has no representative in the table") from e


def format_table(table: PartitionTable) -> List[str]:
    # One comma separated tuple per row
    return [",".join(str(x) for x in entry) for entry in table.entries]
