# Multiscale reduction of raw sweep output to combinatorial classes
import json
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Optional, Tuple

import structlog
from pydantic import BaseModel, Field

from confsweep.errors import MixedParameters
from confsweep.incidence import Configuration, canonical, serialize
from confsweep.known import known_count
from confsweep.reduce.invariants import Refinement
from confsweep.reduce.isomorphism import Witness, is_self_dual, isomorphisms


logger = structlog.get_logger(__name__)


class EquivalenceClass(BaseModel):
    # Representative plus the number of raw inputs merged into it
    representative: Configuration
    members: int
    self_dual: bool
    witnesses: Optional[List[Witness]] = None


class LevelStats(BaseModel):
    level: int
    buckets: int = 0
    largest: int = 0
    splits: int = 0
    refined: int = 0
    searched: int = 0


class ReductionReport(BaseModel):
    n: Optional[int] = None
    k: Optional[int] = None
    inputs: int = 0
    distinct: int = 0
    classes: int = 0
    self_dual: int = 0
    levels: List[LevelStats] = Field(default_factory=list)
    known_topological: Optional[int] = None
    matches_known: Optional[bool] = None


class _Item:
    # One distinct input with its lazily refined invariants
    def __init__(self, serial: str, config: Configuration, count: int):
        self.serial = serial
        self.config = config
        self.count = count
        self.refinement = Refinement(config)


_Group = List[Tuple[str, int]]


def _level(stats: Dict[int, LevelStats], level: int) -> LevelStats:
    return stats.setdefault(level, LevelStats(level=level))


def _merge_stable(items: List[_Item], stats: LevelStats) -> List[List[_Item]]:
    # Pairwise isomorphism against the representatives found so far
    groups: List[List[_Item]] = []
    for item in items:
        for group in groups:
            stats.searched += 1
            head = group[0]
            if next(isomorphisms(head.config, item.config, head.refinement, item.refinement), None) is not None:
                group.append(item)
                break
        else:
            groups.append([item])
    return groups


def _reduce_bucket(items: List[_Item], level: int, stats: Dict[int, LevelStats]) -> List[List[_Item]]:
    # Items share their key at this level; split, refine or search
    entry = _level(stats, level)
    entry.buckets += 1
    entry.largest = max(entry.largest, len(items))
    if len(items) == 1:
        return [items]

    sub: Dict[tuple, List[_Item]] = {}
    for item in items:
        sub.setdefault(item.refinement.key(level + 1), []).append(item)
    if len(sub) > 1:
        entry.splits += 1
        return [group for key in sorted(sub) for group in _reduce_bucket(sub[key], level + 1, stats)]

    head = items[0].refinement
    if head.cells(level + 1) > head.cells(level):
        entry.refined += 1
        return _reduce_bucket(items, level + 1, stats)

    return _merge_stable(items, entry)


def _reduce_top_bucket(group: _Group) -> Tuple[List[_Group], List[dict]]:
    # Worker entry: rebuild items from serials, reduce, return plain data
    items = [_Item(serial, _parse(serial), count) for serial, count in group]
    stats: Dict[int, LevelStats] = {}
    merged = _reduce_bucket(items, 0, stats)
    return (
        [[(item.serial, item.count) for item in cls] for cls in merged],
        [entry.model_dump() for entry in stats.values()],
    )


def _configure_worker() -> None:
    from confsweep.config import settings
    from confsweep.main import configure_logging

    configure_logging(settings.log_level)


def _parse(serial: str) -> Configuration:
    data = json.loads(serial)
    return Configuration(n=data["n"], k=data["k"], lines=data["lines"])


def reduce_all(
    configs: Iterable[Configuration],
    jobs: int = 1,
) -> Tuple[List[EquivalenceClass], ReductionReport]:
    # Pairwise non-isomorphic classes covering the input, sorted by representative
    counts: Dict[str, int] = {}
    report = ReductionReport()
    for c in configs:
        if report.n is None:
            report.n, report.k = c.n, c.k
        elif (c.n, c.k) != (report.n, report.k):
            raise MixedParameters(f"got ({c.n},{c.k}) after ({report.n},{report.k})")
        serial = serialize(canonical(c))
        counts[serial] = counts.get(serial, 0) + 1
        report.inputs += 1
    report.distinct = len(counts)

    buckets: Dict[tuple, _Group] = {}
    for serial in sorted(counts):
        key = Refinement(_parse(serial)).key(0)
        buckets.setdefault(key, []).append((serial, counts[serial]))
    payloads = [buckets[key] for key in sorted(buckets)]
    logger.info("Reduction started", inputs=report.inputs, distinct=report.distinct, buckets=len(payloads))

    if jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_configure_worker) as pool:
            results = list(pool.map(_reduce_top_bucket, payloads))
    else:
        results = [_reduce_top_bucket(payload) for payload in payloads]

    stats: Dict[int, LevelStats] = {}
    classes: List[EquivalenceClass] = []
    for merged, level_stats in results:
        for raw in level_stats:
            entry = _level(stats, raw["level"])
            entry.buckets += raw["buckets"]
            entry.largest = max(entry.largest, raw["largest"])
            entry.splits += raw["splits"]
            entry.refined += raw["refined"]
            entry.searched += raw["searched"]
        for group in merged:
            representative = _parse(min(serial for serial, _ in group))
            classes.append(
                EquivalenceClass(
                    representative=representative,
                    members=sum(count for _, count in group),
                    self_dual=bool(is_self_dual(representative)),
                )
            )

    classes.sort(key=lambda cls: serialize(cls.representative))
    report.classes = len(classes)
    report.self_dual = sum(1 for cls in classes if cls.self_dual)
    report.levels = [stats[level] for level in sorted(stats)]
    if report.n is not None:
        report.known_topological = known_count("topological", report.n, report.k)
        if report.known_topological is not None:
            report.matches_known = report.known_topological == report.classes
    logger.info("Reduction finished", classes=report.classes, self_dual=report.self_dual)
    return classes, report
