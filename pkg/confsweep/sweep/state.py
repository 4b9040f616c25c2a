# Search nodes of the projective-plane sweep and their successors
from dataclasses import dataclass, replace
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

import structlog

from confsweep.errors import CanonicityReject, ConfigurationError, InfeasibleClosure, LambdaNotMaximal, ReplayMismatch
from confsweep.incidence import Configuration, ensure_valid
from confsweep.partitions import PartitionTable, dihedral_max, partition_table, rank
from confsweep.sweep.events import BaseInit, Close, FrameSweep, WorkingK


logger = structlog.get_logger(__name__)

Point = Tuple[Optional[int], Tuple[int, ...]]


class SweepParams(NamedTuple):
    # Everything fixed once n, k and the base tuple are chosen
    n: int
    k: int
    m: int
    lam: Tuple[int, ...]
    lam0: int
    lam_rank: int
    work_2_cap: int
    blocks: Tuple[Tuple[int, ...], ...]
    table: PartitionTable


class LineCounters(NamedTuple):
    # Per working line crossing budget
    frame_k: int
    work_k: int
    frame_2: int
    work_2: int
    cur_segment: int
    closed_segments: Tuple[int, ...]
    wraps: bool


@dataclass(frozen=True)
class SweepState:
    params: SweepParams
    order: Tuple[int, ...]
    crossed: Tuple[int, ...]
    counters: Tuple[LineCounters, ...]
    frames_done: int
    work_k_done: int
    work_2_total: int
    frame_segments: Tuple[Tuple[int, ...], ...]
    points: Tuple[Point, ...]
    history: Tuple[object, ...]
    # Sweep-line positions covered by the last event when it was a working k-crossing
    last_span: Optional[Tuple[int, int]] = None

    @property
    def lam(self) -> Tuple[int, ...]:
        return self.params.lam

    @property
    def complete(self) -> bool:
        # Every frame and working k-crossing swept
        return self.frames_done == self.params.k and self.work_k_done == self.params.m

    def key(self) -> tuple:
        # States with equal keys have identical futures
        return (
            self.order,
            self.crossed,
            self.counters,
            self.frames_done,
            self.frame_segments,
            tuple(sorted(self.points, key=lambda point: (-1 if point[0] is None else point[0], point[1]))),
            self.last_span,
        )

    def commutes_before(self, child: "SweepState") -> bool:
        # A working k-crossing wholly left of the previous one commutes with it and is taken first instead
        return (
            self.last_span is not None
            and child.last_span is not None
            and child.last_span[1] < self.last_span[0]
        )

    def is_crossed(self, a: int, b: int) -> bool:
        return bool(self.crossed[a] >> b & 1)


class Closure(NamedTuple):
    # Accepted leaf of the search
    configuration: Configuration
    history: Tuple[object, ...]
    segments: Tuple[Tuple[int, ...], ...]


def initial_state(n: int, k: int, lam: Sequence[int]) -> SweepState:
    # Lay out the working lines met by the base line
    table = partition_table(n, k)
    lam = tuple(lam)
    if len(lam) != k or sum(lam) != table.total or dihedral_max(lam) != lam or lam not in table.entries:
        raise LambdaNotMaximal(f"{list(lam)} is not a maximal {k}-partition of {table.total}")

    counters: List[LineCounters] = []
    blocks: List[Tuple[int, ...]] = []
    points: List[Point] = []
    for j, length in enumerate(lam):
        for _ in range(length):
            blocks.append((len(counters),))
            counters.append(LineCounters(0, 0, 1, 0, 1, (), True))
        if j < k - 1:
            group = tuple(range(len(counters), len(counters) + k - 1))
            blocks.append(group)
            points.append((0, group))
            counters.extend(LineCounters(1, 0, 0, 0, 0, (), False) for _ in group)

    crossed = [0] * len(counters)
    for group in blocks:
        for a in group:
            for b in group:
                if a != b:
                    crossed[a] |= 1 << b

    m = table.total
    params = SweepParams(
        n=n,
        k=k,
        m=m,
        lam=lam,
        lam0=lam[0],
        lam_rank=rank(table, lam),
        work_2_cap=(n - 2 * k) * m // 2,
        blocks=tuple(blocks),
        table=table,
    )
    return SweepState(
        params=params,
        order=tuple(range(len(counters))),
        crossed=tuple(crossed),
        counters=tuple(counters),
        frames_done=1,
        work_k_done=0,
        work_2_total=0,
        frame_segments=(lam,),
        points=tuple(points),
        history=(BaseInit(lam=lam),),
    )


def _room(c: LineCounters, grouped: bool, frame: bool, p: SweepParams) -> int:
    # Largest number of forced 2-crossings the line can absorb in this role; negative means never
    missing = p.k - c.frame_k - c.work_k
    if grouped:
        if missing < 1:
            return -1
        return min(
            p.lam0 - c.cur_segment,
            p.m - c.frame_2 - c.work_2,
            p.m - c.work_k - (0 if frame else 1) - c.work_2,
        )
    cap = p.lam0 - c.closed_segments[0] if c.wraps and missing == 0 else p.lam0
    bump = 1 if frame else 0
    return min(
        cap - c.cur_segment - bump,
        p.m - c.frame_2 - bump - c.work_2,
        p.m - c.work_k - c.work_2,
    )


def _slot_vectors(state: SweepState, frame: bool) -> Iterator[Tuple[int, ...]]:
    # Slot 2j is gap j, slot 2j+1 is group j; lines are assigned in sweep-line order
    p = state.params
    groups = p.k - 1 if frame else 1
    size = p.k - 1 if frame else p.k
    last_gap = 2 * groups
    order = state.order
    count = len(order)
    crossed = state.crossed
    room_group = [_room(state.counters[line], True, frame, p) for line in order]
    room_gap = [_room(state.counters[line], False, frame, p) for line in order]

    slots = [0] * count
    forced = [0] * count
    need = [size] * groups
    members = [0] * groups
    gap_sizes = [0] * (groups + 1)

    def lower_bound(pos: int) -> int:
        s = slots[pos]
        return forced[pos] + sum(need[g] for g in range(groups) if 2 * g + 1 < s)

    def room_of(pos: int) -> int:
        return room_group[pos] if slots[pos] % 2 else room_gap[pos]

    def place(pos: int, started: bool, pending: int) -> Iterator[Tuple[int, ...]]:
        if pos == count:
            if pending == 0:
                yield tuple(slots)
            return
        if count - pos < pending:
            return
        line = order[pos]
        if not started:
            options = [0] + [2 * g + 1 for g in range(groups) if need[g]]
        elif pending == 0:
            options = [last_gap]
        else:
            options = [s for s in range(last_gap + 1) if s % 2 == 0 or need[s // 2]]

        for s in options:
            g = s // 2
            if s % 2:
                if room_group[pos] < 0 or crossed[line] & members[g]:
                    continue
            else:
                if room_gap[pos] < 0:
                    continue
                if frame and gap_sizes[g] >= p.lam0:
                    continue
            hits = [q for q in range(pos) if slots[q] > s]
            if any(crossed[line] >> order[q] & 1 for q in hits):
                continue

            slots[pos] = s
            forced[pos] = len(hits)
            for q in hits:
                forced[q] += 1
            if s % 2:
                need[g] -= 1
                members[g] |= 1 << line
            else:
                gap_sizes[g] += 1

            if lower_bound(pos) <= room_of(pos) and all(lower_bound(q) <= room_of(q) for q in hits):
                yield from place(pos + 1, started or s % 2 == 1, pending - s % 2)

            if s % 2:
                need[g] += 1
                members[g] &= ~(1 << line)
            else:
                gap_sizes[g] -= 1
            for q in hits:
                forced[q] -= 1
            forced[pos] = 0
            slots[pos] = 0

    yield from place(0, False, groups * size)


def _slot_problem(state: SweepState, slots: Sequence[int], frame: bool) -> Optional[str]:
    # Full admissibility check of one event; None when admissible
    p = state.params
    groups = p.k - 1 if frame else 1
    size = p.k - 1 if frame else p.k
    last_gap = 2 * groups
    order = state.order
    count = len(order)
    if len(slots) != count or any(not 0 <= s <= last_gap for s in slots):
        return "slot vector does not cover the sweep line"

    grouped = [pos for pos in range(count) if slots[pos] % 2]
    for g in range(groups):
        if sum(1 for pos in grouped if slots[pos] == 2 * g + 1) != size:
            return f"group {g} does not hold {size} lines"
    first, last = grouped[0], grouped[-1]
    if any(slots[pos] != 0 for pos in range(first)):
        return "line left of the event moved"
    if any(slots[pos] != last_gap for pos in range(last + 1, count)):
        return "line right of the event moved"

    forced = [0] * count
    for i in range(count):
        for j in range(i + 1, count):
            a, b = order[i], order[j]
            if slots[i] > slots[j] or (slots[i] == slots[j] and slots[i] % 2):
                if state.is_crossed(a, b):
                    return f"lines {a} and {b} would cross twice"
                if slots[i] > slots[j]:
                    forced[i] += 1
                    forced[j] += 1

    for pos in range(count):
        room = _room(state.counters[order[pos]], bool(slots[pos] % 2), frame, p)
        if room < forced[pos]:
            return f"line {order[pos]} exceeds its crossing budget"

    if frame:
        gaps = tuple(sum(1 for s in slots if s == 2 * g) for g in range(groups + 1))
        if max(gaps) > p.lam0:
            return "frame segment longer than the base segment"
        if rank(p.table, gaps) < p.lam_rank:
            return "frame segments precede the base tuple"
    return None


def _event_from_slots(order: Sequence[int], slots: Sequence[int], frame: bool):
    grouped = [pos for pos in range(len(order)) if slots[pos] % 2]
    kernel = range(grouped[0] + 1, grouped[-1])
    if not frame:
        return WorkingK(
            chosen=tuple(order[pos] for pos in grouped),
            left=tuple(order[pos] for pos in kernel if slots[pos] == 0),
            right=tuple(order[pos] for pos in kernel if slots[pos] == 2),
        )
    groups = max(slots) // 2
    return FrameSweep(
        groups=tuple(tuple(order[pos] for pos in grouped if slots[pos] == 2 * g + 1) for g in range(groups)),
        gaps=tuple(tuple(order[pos] for pos in kernel if slots[pos] == 2 * g) for g in range(groups + 1)),
    )


def _advance(state: SweepState, slots: Sequence[int], frame: bool) -> SweepState:
    # Apply one event given by its slot vector
    p = state.params
    order = state.order
    count = len(order)
    crossed = list(state.crossed)
    forced = [0] * count
    pairs = 0
    for i in range(count):
        for j in range(i + 1, count):
            inverted = slots[i] > slots[j]
            if inverted or (slots[i] == slots[j] and slots[i] % 2):
                a, b = order[i], order[j]
                crossed[a] |= 1 << b
                crossed[b] |= 1 << a
                if inverted:
                    forced[i] += 1
                    forced[j] += 1
                    pairs += 1

    new_order = tuple(
        order[pos] for pos in sorted(range(count), key=lambda pos: (slots[pos], -pos if slots[pos] % 2 else pos))
    )

    counters = list(state.counters)
    for pos, line in enumerate(order):
        c = counters[line]
        f = forced[pos]
        if slots[pos] % 2:
            c = c._replace(
                frame_k=c.frame_k + (1 if frame else 0),
                work_k=c.work_k + (0 if frame else 1),
                work_2=c.work_2 + f,
                cur_segment=0,
                closed_segments=c.closed_segments + (c.cur_segment + f,),
            )
        elif frame:
            c = c._replace(frame_2=c.frame_2 + 1, work_2=c.work_2 + f, cur_segment=c.cur_segment + f + 1)
        else:
            c = c._replace(work_2=c.work_2 + f, cur_segment=c.cur_segment + f)
        counters[line] = c

    groups = p.k - 1 if frame else 1
    frame_index = state.frames_done if frame else None
    new_points = tuple(
        (frame_index, tuple(sorted(order[pos] for pos in range(count) if slots[pos] == 2 * g + 1)))
        for g in range(groups)
    )
    frame_segments = state.frame_segments
    if frame:
        frame_segments += (tuple(sum(1 for s in slots if s == 2 * g) for g in range(groups + 1)),)

    return replace(
        state,
        order=new_order,
        crossed=tuple(crossed),
        counters=tuple(counters),
        frames_done=state.frames_done + (1 if frame else 0),
        work_k_done=state.work_k_done + (0 if frame else 1),
        work_2_total=state.work_2_total + pairs,
        frame_segments=frame_segments,
        points=state.points + new_points,
        history=state.history + (_event_from_slots(order, slots, frame),),
        last_span=None if frame else _span(slots),
    )


def _span(slots: Sequence[int]) -> Tuple[int, int]:
    grouped = [pos for pos, s in enumerate(slots) if s % 2]
    return grouped[0], grouped[-1]


def _segment_capacity(c: LineCounters, missing: int, lam0: int) -> int:
    # 2-crossings the line can still place without a segment exceeding lam0
    if c.wraps:
        if missing == 0:
            return lam0 - c.closed_segments[0] - c.cur_segment
        if not c.closed_segments:
            return (lam0 - c.cur_segment) + (missing - 1) * lam0
        return (lam0 - c.cur_segment) + (missing - 1) * lam0 + (lam0 - c.closed_segments[0])
    return (lam0 - c.cur_segment) + missing * lam0


def viable(state: SweepState) -> bool:
    # Lookahead: can this node still reach a closure
    p = state.params
    if state.frames_done > p.k or state.work_k_done > p.m or state.work_2_total > p.work_2_cap:
        return False
    frames_left = p.k - state.frames_done
    open_lines = 0
    for c in state.counters:
        missing = p.k - c.frame_k - c.work_k
        left_2 = p.m - c.frame_2 - c.work_2
        if missing < 0 or left_2 < 0 or c.work_k + c.work_2 > p.m or missing + left_2 < frames_left:
            return False
        if left_2 > _segment_capacity(c, missing, p.lam0):
            return False
        if missing:
            open_lines += 1
    if frames_left and open_lines < (p.k - 1) ** 2:
        return False
    if state.work_k_done < p.m and open_lines < p.k:
        return False
    return True


def _successors(state: SweepState, frame: bool) -> List[SweepState]:
    out: List[SweepState] = []
    for slots in _slot_vectors(state, frame):
        if _slot_problem(state, slots, frame) is not None:
            continue
        child = _advance(state, slots, frame)
        if viable(child):
            out.append(child)
    return out


def successors_working(state: SweepState) -> List[SweepState]:
    # All admissible working k-crossings
    if state.work_k_done >= state.params.m:
        return []
    return _successors(state, frame=False)


def successors_frame(state: SweepState) -> List[SweepState]:
    # All admissible sweeps of the next frame line
    if state.frames_done >= state.params.k:
        return []
    return _successors(state, frame=True)


def reference_order(state: SweepState) -> Tuple[int, ...]:
    # Initial order seen from the antipodal side; lines through a base point keep their order
    return tuple(line for block in reversed(state.params.blocks) for line in block)


def closing_pairs(state: SweepState) -> List[Tuple[int, int]]:
    # Pairs inverted between the final order and the reference order
    where = {line: i for i, line in enumerate(reference_order(state))}
    order = state.order
    return [
        (min(order[i], order[j]), max(order[i], order[j]))
        for i in range(len(order))
        for j in range(i + 1, len(order))
        if where[order[i]] > where[order[j]]
    ]


def segment_tuples(state: SweepState, placements: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    # Segment lengths of every line: frame lines first, then working lines by id
    tuples = list(state.frame_segments)
    for line, c in enumerate(state.counters):
        tail = c.cur_segment + placements[line]
        if c.wraps:
            tuples.append((c.closed_segments[0] + tail,) + c.closed_segments[1:])
        else:
            tuples.append(c.closed_segments + (tail,))
    return tuple(tuples)


def assemble(state: SweepState) -> Configuration:
    # Point 0 is the base point; the others follow in sweep order
    p = state.params
    lines: List[List[int]] = [[0] for _ in range(p.k)]
    working: List[List[int]] = [[] for _ in state.counters]
    for index, (frame_index, members) in enumerate(state.points, start=1):
        if frame_index is not None:
            lines[frame_index].append(index)
        for line in members:
            working[line].append(index)
    return Configuration(n=p.n, k=p.k, lines=lines + working)


def close(state: SweepState) -> Closure:
    # Place the last 2-crossings and assemble the configuration
    p = state.params
    if not state.complete:
        raise InfeasibleClosure("frame or working k-crossings still missing")

    count = len(state.counters)
    uncrossed = {(a, b) for a in range(count) for b in range(a + 1, count) if not state.is_crossed(a, b)}
    if uncrossed != set(closing_pairs(state)):
        raise InfeasibleClosure("uncrossed pairs differ from the closing inversions")

    placements = [0] * count
    for a, b in uncrossed:
        placements[a] += 1
        placements[b] += 1

    for line, c in enumerate(state.counters):
        if c.frame_k + c.work_k != p.k:
            raise InfeasibleClosure(f"line {line} misses k-crossings")
        if c.frame_2 + c.work_2 + placements[line] != p.m:
            raise InfeasibleClosure(f"line {line} has the wrong number of 2-crossings")

    segments = segment_tuples(state, placements)
    for line, t in enumerate(segments):
        if len(t) != p.k or max(t) > p.lam0:
            raise InfeasibleClosure(f"line {line} has segments {list(t)}")
        if rank(p.table, t) < p.lam_rank:
            raise CanonicityReject(f"line {line} segments {list(t)} precede {list(p.lam)}")

    try:
        config = ensure_valid(assemble(state))
    except ConfigurationError as e:
        raise InfeasibleClosure(str(e)) from e
    return Closure(
        configuration=config,
        history=state.history + (Close(placements=tuple(placements)),),
        segments=segments,
    )


def _slots_for(state: SweepState, event, index: int) -> Tuple[Tuple[int, ...], bool]:
    # Translate a recorded event back to a slot vector
    position = {line: pos for pos, line in enumerate(state.order)}
    slots: List[Optional[int]] = [None] * len(state.order)
    if isinstance(event, WorkingK):
        frame = False
        assignments = [(event.chosen, 1), (event.left, 0), (event.right, 2)]
    else:
        frame = True
        assignments = [(group, 2 * g + 1) for g, group in enumerate(event.groups)]
        assignments += [(gap, 2 * g) for g, gap in enumerate(event.gaps)]
    for lines, slot in assignments:
        for line in lines:
            if line not in position or slots[position[line]] is not None:
                raise ReplayMismatch(index, "event names an unknown or repeated line")
            slots[position[line]] = slot
    grouped = [pos for pos, s in enumerate(slots) if s is not None and s % 2]
    if not grouped:
        raise ReplayMismatch(index, "event has no k-crossing")
    last_gap = 2 if not frame else 2 * len(event.groups)
    for pos, s in enumerate(slots):
        if s is None:
            if grouped[0] < pos < grouped[-1]:
                raise ReplayMismatch(index, f"kernel line {state.order[pos]} has no direction")
            slots[pos] = 0 if pos < grouped[0] else last_gap
        elif s % 2 == 0 and not grouped[0] < pos < grouped[-1]:
            raise ReplayMismatch(index, f"line {state.order[pos]} is not in the kernel")
    return tuple(slots), frame


def iter_states(history: Sequence[object]) -> Iterator[SweepState]:
    # Validated state after BaseInit and after every later event except Close
    if not history or not isinstance(history[0], BaseInit):
        raise ReplayMismatch(0, "history must start with BaseInit")
    lam = history[0].lam
    k = len(lam)
    n = sum(lam) + 1 + k * (k - 1)
    try:
        state = initial_state(n, k, lam)
    except LambdaNotMaximal as e:
        raise ReplayMismatch(0, "base tuple is not maximal", str(e)) from e
    yield state

    for index, event in enumerate(history[1:], start=1):
        if isinstance(event, BaseInit):
            raise ReplayMismatch(index, "BaseInit may only start a history")
        if isinstance(event, Close):
            if index != len(history) - 1:
                raise ReplayMismatch(index, "Close must be the last event")
            try:
                closure = close(state)
            except (InfeasibleClosure, CanonicityReject) as e:
                raise ReplayMismatch(index, "closure rejected", str(e)) from e
            if closure.history[-1] != event:
                raise ReplayMismatch(index, "closing placements differ")
            return
        if isinstance(event, FrameSweep) and state.frames_done >= k:
            raise ReplayMismatch(index, "more frame sweeps than frame lines")
        if isinstance(event, WorkingK) and state.work_k_done >= state.params.m:
            raise ReplayMismatch(index, "more working k-crossings than available")
        slots, frame = _slots_for(state, event, index)
        problem = _slot_problem(state, slots, frame)
        if problem is not None:
            raise ReplayMismatch(index, problem)
        state = _advance(state, slots, frame)
        if not viable(state):
            raise ReplayMismatch(index, "state can no longer close")
        yield state


def replay(history: Sequence[object]) -> SweepState:
    # Rebuild and re-validate the state a history leads to
    state = None
    for state in iter_states(history):
        pass
    return state


def replay_configuration(history: Sequence[object]) -> Configuration:
    # Configuration produced by a closed history
    state = replay(history)
    return close(state).configuration
