# Depth-first driver with deterministic subtree parallelism and checkpoints
import hashlib
import time
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, List, Optional, Tuple

import structlog
from pydantic import BaseModel, Field

from confsweep.config import settings
from confsweep.errors import CanonicityReject, ConfsweepError, InfeasibleClosure
from confsweep.partitions import partition_table
from confsweep.storage import CheckpointFile, CheckpointHeader, ConfigurationRecord, make_record
from confsweep.sweep.events import dump_history, load_history
from confsweep.sweep.state import (
    Closure,
    SweepState,
    close,
    initial_state,
    replay,
    successors_frame,
    successors_working,
)


logger = structlog.get_logger(__name__)


class SweepOptions(BaseModel):
    # Knobs of one enumeration run
    jobs: int = Field(default_factory=lambda: settings.jobs, ge=1)
    split_depth: int = Field(default_factory=lambda: settings.split_depth, ge=0)
    checkpoint: Optional[str] = None
    progress: bool = False
    progress_every: int = Field(default_factory=lambda: settings.progress_every, ge=1)
    visited_limit: int = Field(default_factory=lambda: settings.visited_limit, ge=1)
    log_level: str = Field(default_factory=lambda: settings.log_level)


class SweepStats(BaseModel):
    nodes: int = 0
    closures: int = 0
    rejected: int = 0
    evicted: int = 0


def expand(state: SweepState) -> List[SweepState]:
    # Working k-crossings first, then the next frame line; commuting pairs only in left-to-right order
    working = [child for child in successors_working(state) if not state.commutes_before(child)]
    return working + successors_frame(state)


def fingerprint(state: SweepState) -> bytes:
    return hashlib.blake2b(repr(state.key()).encode(), digest_size=16).digest()


class Visited:
    # Bounded set of state fingerprints, oldest evicted first
    def __init__(self, limit: int):
        self.limit = limit
        self.seen: "OrderedDict[bytes, None]" = OrderedDict()
        self.evicted = 0

    def add(self, state: SweepState) -> bool:
        # False when the state was seen already
        key = fingerprint(state)
        if key in self.seen:
            return False
        self.seen[key] = None
        if len(self.seen) > self.limit:
            self.seen.popitem(last=False)
            self.evicted += 1
        return True


def search(root: SweepState, options: Optional[SweepOptions] = None) -> Tuple[List[Closure], SweepStats]:
    # Explicit-stack DFS below one root
    options = options or SweepOptions()
    stats = SweepStats()
    found: List[Closure] = []
    stack = [root]
    visited = Visited(options.visited_limit)
    visited.add(root)
    while stack:
        state = stack.pop()
        stats.nodes += 1
        if options.progress and stats.nodes % options.progress_every == 0:
            logger.info("Sweep progress", nodes=stats.nodes, closures=stats.closures, stack=len(stack))
        if state.complete:
            try:
                found.append(close(state))
                stats.closures += 1
            except (InfeasibleClosure, CanonicityReject):
                stats.rejected += 1
            continue
        for child in reversed(expand(state)):
            if visited.add(child):
                stack.append(child)
    stats.evicted = visited.evicted
    return found, stats


def frontier(n: int, k: int, split_depth: int) -> List[SweepState]:
    # Roots for every base tuple, expanded breadth-first to split_depth
    level = [initial_state(n, k, lam) for lam in partition_table(n, k).entries]
    for _ in range(split_depth):
        seen = set()
        nxt: List[SweepState] = []
        for state in level:
            children = [state] if state.complete else expand(state)
            for child in children:
                key = fingerprint(child)
                if key not in seen:
                    seen.add(key)
                    nxt.append(child)
        level = nxt
    return level


def closure_record(closure: Closure) -> ConfigurationRecord:
    return make_record(closure.configuration, history=dump_history(closure.history))


def _configure_worker(level: str) -> None:
    from confsweep.main import configure_logging

    configure_logging(level)


def _run_task(payload: Tuple[SweepState, SweepOptions]) -> Tuple[List[ConfigurationRecord], SweepStats]:
    root, options = payload
    found, stats = search(root, options)
    return [closure_record(closure) for closure in found], stats


def enumerate_sweep(n: int, k: int, options: Optional[SweepOptions] = None) -> Iterator[ConfigurationRecord]:
    # Stream every accepted closure in task order, independent of the worker count
    options = options or SweepOptions()
    if n <= k * (k - 1):
        raise ConfsweepError(f"n must exceed k(k-1) = {k * (k - 1)}")
    started = time.monotonic()

    checkpoint = CheckpointFile(options.checkpoint) if options.checkpoint else None
    done = {}
    loaded = checkpoint.load() if checkpoint else None
    if loaded is not None:
        header, done = loaded
        if (header.n, header.k, header.split_depth) != (n, k, options.split_depth):
            raise ConfsweepError("checkpoint was written for different parameters")
        tasks = [replay(load_history(history)) for history in header.tasks]
        logger.info("Resuming sweep", n=n, k=k, tasks=len(tasks), finished=len(done))
    else:
        tasks = frontier(n, k, options.split_depth)
        if checkpoint:
            checkpoint.start(
                CheckpointHeader(
                    n=n,
                    k=k,
                    split_depth=options.split_depth,
                    tasks=[dump_history(task.history) for task in tasks],
                )
            )
        logger.info("Sweep started", n=n, k=k, tasks=len(tasks), jobs=options.jobs)

    pending = [i for i in range(len(tasks)) if i not in done]
    payloads = [(tasks[i], options) for i in pending]
    total = SweepStats()

    def consume(results) -> Iterator[ConfigurationRecord]:
        results = iter(results)
        for index in range(len(tasks)):
            if index in done:
                records = done[index]
            else:
                records, stats = next(results)
                total.nodes += stats.nodes
                total.closures += stats.closures
                total.rejected += stats.rejected
                total.evicted += stats.evicted
                if checkpoint:
                    checkpoint.append(index, records)
            yield from records

    emitted = 0
    if options.jobs == 1 or len(payloads) <= 1:
        for record in consume(map(_run_task, payloads)):
            emitted += 1
            yield record
    else:
        with ProcessPoolExecutor(
            max_workers=options.jobs,
            initializer=_configure_worker,
            initargs=(options.log_level,),
        ) as pool:
            for record in consume(pool.map(_run_task, payloads)):
                emitted += 1
                yield record

    logger.info(
        "Sweep finished",
        n=n,
        k=k,
        emitted=emitted,
        nodes=total.nodes,
        rejected=total.rejected,
        evicted=total.evicted,
        seconds=round(time.monotonic() - started, 3),
    )
