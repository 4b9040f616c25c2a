# Brute-force enumeration of small combinatorial configurations
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import structlog

from confsweep.config import settings
from confsweep.errors import BudgetExceeded, ConfigurationError
from confsweep.incidence import Configuration, canonical, ensure_valid


logger = structlog.get_logger(__name__)


def _line_of(c: Configuration) -> List[List[int]]:
    # Index of the line through two points, -1 if none
    table = [[-1] * c.n for _ in range(c.n)]
    for j, line in enumerate(c.lines):
        for a in line:
            for b in line:
                if a != b:
                    table[a][b] = j
    return table


def _triangles(c: Configuration, line_of: List[List[int]]) -> List[int]:
    # Sorted per-point counts of pairwise collinear triples
    counts = [0] * c.n
    for a, b, d in combinations(range(c.n), 3):
        if line_of[a][b] >= 0 and line_of[a][d] >= 0 and line_of[b][d] >= 0:
            counts[a] += 1
            counts[b] += 1
            counts[d] += 1
    return sorted(counts)


def isomorphic_by_points(c1: Configuration, c2: Configuration) -> Optional[Tuple[int, ...]]:
    # Exhaustive point-map search keeping the line correspondence consistent
    if (c1.n, c1.k) != (c2.n, c2.k):
        return None
    line1, line2 = _line_of(c1), _line_of(c2)
    if _triangles(c1, line1) != _triangles(c2, line2):
        return None
    n = c1.n
    images = [-1] * n
    used = [False] * n
    line_map: Dict[int, int] = {}
    line_used: Dict[int, int] = {}

    def extend(p: int) -> bool:
        if p == n:
            return True
        for q in range(n):
            if used[q]:
                continue
            added: List[int] = []
            ok = True
            for prev in range(p):
                a, b = line1[p][prev], line2[q][images[prev]]
                if (a < 0) != (b < 0):
                    ok = False
                    break
                if a < 0:
                    continue
                if a in line_map:
                    if line_map[a] != b:
                        ok = False
                        break
                elif b in line_used:
                    ok = False
                    break
                else:
                    line_map[a] = b
                    line_used[b] = a
                    added.append(a)
            if ok:
                images[p] = q
                used[q] = True
                if extend(p + 1):
                    return True
                used[q] = False
                images[p] = -1
            for a in added:
                del line_used[line_map.pop(a)]
        return False

    return tuple(images) if extend(0) else None


def enumerate_combinatorial(n: int, k: int) -> List[Configuration]:
    # One representative per isomorphism class, in discovery order
    limit = settings.oracle_limits.get(k)
    if limit is None or not 1 <= n <= limit:
        raise BudgetExceeded(f"oracle only handles k in {sorted(settings.oracle_limits)} up to the configured n")
    if n < k * (k - 1) + 1:
        return []

    lines: List[Tuple[int, ...]] = []
    degree = [0] * n
    collinear = [0] * n

    def add(line: Tuple[int, ...]) -> None:
        lines.append(line)
        for a in line:
            degree[a] += 1
            for b in line:
                if a != b:
                    collinear[a] |= 1 << b

    def remove() -> None:
        line = lines.pop()
        for a in line:
            degree[a] -= 1
            for b in line:
                if a != b:
                    collinear[a] &= ~(1 << b)

    # Lines through point 0 are fixed up to relabeling
    for i in range(k):
        add((0,) + tuple(range(1 + i * (k - 1), 1 + (i + 1) * (k - 1))))

    found: List[Configuration] = []
    leaves = 0

    def feasible() -> bool:
        for q in range(n):
            deficit = k - degree[q]
            if deficit == 0:
                continue
            partners = sum(
                1 for r in range(n) if r != q and degree[r] < k and not collinear[q] >> r & 1
            )
            if partners < deficit * (k - 1):
                return False
        return True

    def grow() -> None:
        nonlocal leaves
        if len(lines) == n:
            leaves += 1
            try:
                config = ensure_valid(Configuration(n=n, k=k, lines=lines))
            except ConfigurationError:
                return
            if all(isomorphic_by_points(rep, config) is None for rep in found):
                found.append(config)
            return
        pivot = next(p for p in range(n) if degree[p] < k)
        last = max((line for line in lines if pivot in line), default=())
        options = [q for q in range(pivot + 1, n) if degree[q] < k and not collinear[pivot] >> q & 1]
        for rest in combinations(options, k - 1):
            line = (pivot,) + rest
            if line <= last:
                continue
            if any(collinear[a] >> b & 1 for a, b in combinations(rest, 2)):
                continue
            add(line)
            if feasible():
                grow()
            remove()

    grow()
    logger.info("Oracle enumeration finished", n=n, k=k, leaves=leaves, classes=len(found))
    return [canonical(config) for config in found]
