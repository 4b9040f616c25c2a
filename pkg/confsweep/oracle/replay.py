# Independent wire simulator used to validate sweep histories
from typing import Dict, FrozenSet, List, Sequence

import structlog

from confsweep.errors import ReplayMismatch
from confsweep.sweep.events import BaseInit, Close, FrameSweep, WorkingK


logger = structlog.get_logger(__name__)


class _Wire:
    # Mutable counters of one working line
    def __init__(self, wraps: bool):
        self.wraps = wraps
        self.frame_k = 0
        self.work_k = 0
        self.frame_2 = 0
        self.work_2 = 0
        self.cur = 0
        self.closed: List[int] = []


def _orbit_max(t: Sequence[int]) -> List[int]:
    items = list(t)
    images = []
    for base in (items, items[::-1]):
        for shift in range(len(base)):
            images.append(base[shift:] + base[:shift])
    return max(images)


def _inversions(before: Sequence[int], after: Sequence[int]) -> set:
    where = {line: i for i, line in enumerate(after)}
    return {
        frozenset((before[i], before[j]))
        for i in range(len(before))
        for j in range(i + 1, len(before))
        if where[before[i]] > where[before[j]]
    }


def naive_sweep_check(history: Sequence[object], n: int, k: int) -> bool:
    # Replay with explicit orders and a pair table; raise at the first bad event
    m = n - 1 - k * (k - 1)
    if not history or not isinstance(history[0], BaseInit):
        raise ReplayMismatch(0, "history must start with BaseInit")
    lam = list(history[0].lam)
    if len(lam) != k or sum(lam) != m or _orbit_max(lam) != lam:
        raise ReplayMismatch(0, "base tuple is not a maximal k-partition")
    lam0 = lam[0]

    wires: List[_Wire] = []
    blocks: List[List[int]] = []
    crossed: Dict[FrozenSet[int], bool] = {}
    for j in range(k):
        for _ in range(lam[j]):
            wire = _Wire(wraps=True)
            wire.frame_2 = 1
            wire.cur = 1
            blocks.append([len(wires)])
            wires.append(wire)
        if j < k - 1:
            group = list(range(len(wires), len(wires) + k - 1))
            for _ in group:
                wire = _Wire(wraps=False)
                wire.frame_k = 1
                wires.append(wire)
            blocks.append(group)
            for a in group:
                for b in group:
                    if a < b:
                        crossed[frozenset((a, b))] = True
    order = [line for block in blocks for line in block]
    if len(order) != n - k:
        raise ReplayMismatch(0, "layout does not hold n-k working lines")

    frames = 1
    work_k_done = 0
    work_2_done = 0

    def check_budgets(index: int) -> None:
        for line, w in enumerate(wires):
            if w.frame_k + w.work_k > k:
                raise ReplayMismatch(index, f"line {line} has more than k points")
            if w.frame_2 + w.work_2 > m or w.work_k + w.work_2 > m:
                raise ReplayMismatch(index, f"line {line} exceeds its 2-crossing budget")
            if w.cur > lam0 or any(s > lam0 for s in w.closed):
                raise ReplayMismatch(index, f"line {line} has a segment longer than {lam0}")
            if w.wraps and w.frame_k + w.work_k == k and w.closed and w.closed[0] + w.cur > lam0:
                raise ReplayMismatch(index, f"line {line} wrap segment longer than {lam0}")
        if frames > k or work_k_done > m or work_2_done > (n - 2 * k) * m // 2:
            raise ReplayMismatch(index, "global budget exceeded")

    for index, event in enumerate(history[1:], start=1):
        position = {line: i for i, line in enumerate(order)}
        if isinstance(event, Close):
            if index != len(history) - 1:
                raise ReplayMismatch(index, "Close is not the last event")
            if frames != k or work_k_done != m:
                raise ReplayMismatch(index, "Close before every k-crossing was swept")
            reference = [line for block in reversed(blocks) for line in block]
            uncrossed = {
                frozenset((a, b))
                for a in range(len(wires))
                for b in range(a + 1, len(wires))
                if not crossed.get(frozenset((a, b)))
            }
            if _inversions(order, reference) != uncrossed:
                raise ReplayMismatch(index, "closing permutation does not match the uncrossed pairs")
            for line, w in enumerate(wires):
                placed = sum(1 for pair in uncrossed if line in pair)
                if len(event.placements) != len(wires) or event.placements[line] != placed:
                    raise ReplayMismatch(index, f"line {line} placement differs")
                if w.frame_k + w.work_k != k or w.frame_2 + w.work_2 + placed != m:
                    raise ReplayMismatch(index, f"line {line} is incomplete at closure")
                tail = w.cur + placed
                if (w.closed[0] + tail if w.wraps else tail) > lam0:
                    raise ReplayMismatch(index, f"line {line} closing segment too long")
            return True

        if isinstance(event, WorkingK):
            groups = [sorted(event.chosen, key=lambda line: position.get(line, -1))]
            sides = [list(event.left), list(event.right)]
            if len(event.chosen) != k:
                raise ReplayMismatch(index, "working event does not choose k lines")
        elif isinstance(event, FrameSweep):
            groups = [sorted(group, key=lambda line: position.get(line, -1)) for group in event.groups]
            sides = [list(gap) for gap in event.gaps]
            if len(groups) != k - 1 or any(len(group) != k - 1 for group in groups) or len(sides) != k:
                raise ReplayMismatch(index, "frame event has the wrong shape")
        else:
            raise ReplayMismatch(index, "unexpected event")

        members = [line for group in groups for line in group]
        named = members + [line for side in sides for line in side]
        if any(line not in position for line in named) or len(set(named)) != len(named):
            raise ReplayMismatch(index, "event names an unknown or repeated line")
        spots = sorted(position[line] for line in members)
        first, last = spots[0], spots[-1]
        kernel = {line for line in order[first + 1:last] if line not in members}
        if set(line for side in sides for line in side) != kernel:
            raise ReplayMismatch(index, "kernel lines are not all directed")

        new_order = list(order[:first])
        for g, side in enumerate(sides):
            new_order += sorted(side, key=position.get)
            if g < len(groups):
                new_order += groups[g][::-1]
        new_order += order[last + 1:]

        meets = {frozenset((a, b)) for group in groups for a in group for b in group if a != b}
        swapped = _inversions(order, new_order)
        forced = swapped - meets
        for pair in swapped | meets:
            if crossed.get(pair):
                a, b = sorted(pair)
                raise ReplayMismatch(index, f"lines {a} and {b} cross twice")
        for pair in swapped | meets:
            crossed[pair] = True

        forced_at = {line: sum(1 for pair in forced if line in pair) for line in range(len(wires))}
        grouped = set(members)
        for line, w in enumerate(wires):
            f = forced_at[line]
            w.work_2 += f
            if line in grouped:
                if isinstance(event, FrameSweep):
                    w.frame_k += 1
                else:
                    w.work_k += 1
                w.closed.append(w.cur + f)
                w.cur = 0
            elif isinstance(event, FrameSweep):
                w.frame_2 += 1
                w.cur += f + 1
            else:
                w.cur += f

        if isinstance(event, FrameSweep):
            frames += 1
            segments = [first + len(sides[0])]
            segments += [len(side) for side in sides[1:-1]]
            segments.append(len(sides[-1]) + len(order) - 1 - last)
            if max(segments) > lam0:
                raise ReplayMismatch(index, "frame segment longer than the base segment")
        else:
            work_k_done += 1
        work_2_done += len(forced)
        order = new_order
        check_budgets(index)

    raise ReplayMismatch(len(history), "history does not end with Close")
