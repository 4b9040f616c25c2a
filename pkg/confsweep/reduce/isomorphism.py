# Invariant-guided backtracking isomorphism, automorphisms and dualities
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import structlog

from confsweep.errors import ConfsweepError
from confsweep.incidence import Configuration, dualize
from confsweep.reduce.invariants import Colors, Refinement, clique_distribution, coclique_distribution


logger = structlog.get_logger(__name__)

Witness = Tuple[Tuple[int, ...], Tuple[int, ...]]


def meet_table(c: Configuration) -> List[List[int]]:
    # Common point of two lines, -1 when they do not meet
    table = [[-1] * len(c.lines) for _ in c.lines]
    through: Dict[int, List[int]] = {}
    for j, line in enumerate(c.lines):
        for p in line:
            through.setdefault(p, []).append(j)
    for p, lines in through.items():
        for a in lines:
            for b in lines:
                if a != b:
                    table[a][b] = p
    return table


def _line_order(colors: Colors, meets: List[List[int]]) -> List[int]:
    # Smallest cells first, then lines meeting many already ordered lines
    size = Counter(colors.lines)
    remaining = set(range(len(colors.lines)))
    order: List[int] = []
    while remaining:
        best = min(
            remaining,
            key=lambda a: (size[colors.lines[a]], -sum(1 for b in order if meets[a][b] >= 0), a),
        )
        order.append(best)
        remaining.remove(best)
    return order


def _matched_colors(r1: Refinement, r2: Refinement) -> Optional[Tuple[Colors, Colors]]:
    # Colors at the deepest level needed by both, or None if some level differs
    level = 0
    while True:
        if r1.key(level) != r2.key(level):
            return None
        if r1.cells(level + 1) == r1.cells(level) and r2.cells(level + 1) == r2.cells(level):
            if r1.key(level + 1) != r2.key(level + 1):
                return None
            return r1.colors(level), r2.colors(level)
        level += 1


def isomorphisms(
    c1: Configuration,
    c2: Configuration,
    r1: Optional[Refinement] = None,
    r2: Optional[Refinement] = None,
) -> Iterator[Witness]:
    # Every (point_map, line_map) carrying c1 onto c2
    if (c1.n, c1.k, len(c1.lines)) != (c2.n, c2.k, len(c2.lines)):
        return
    matched = _matched_colors(r1 or Refinement(c1), r2 or Refinement(c2))
    if matched is None:
        return
    colors1, colors2 = matched
    meets1, meets2 = meet_table(c1), meet_table(c2)
    order = _line_order(colors1, meets1)
    candidates: Dict[str, List[int]] = {}
    for b, color in enumerate(colors2.lines):
        candidates.setdefault(color, []).append(b)

    count = len(c1.lines)
    line_map = [-1] * count
    used = [False] * count
    point_map: Dict[int, int] = {}
    point_inv: Dict[int, int] = {}

    def extend(depth: int) -> Iterator[Witness]:
        if depth == count:
            if len(point_map) == c1.n:
                images = tuple(point_map[p] for p in range(c1.n))
                if all(
                    sorted(images[p] for p in c1.lines[a]) == list(c2.lines[line_map[a]])
                    for a in range(count)
                ):
                    yield images, tuple(line_map)
            return
        a = order[depth]
        for b in candidates.get(colors1.lines[a], []):
            if used[b]:
                continue
            added: List[int] = []
            ok = True
            for prev in order[:depth]:
                x, y = meets1[a][prev], meets2[b][line_map[prev]]
                if (x < 0) != (y < 0):
                    ok = False
                    break
                if x < 0:
                    continue
                if colors1.points[x] != colors2.points[y]:
                    ok = False
                    break
                if x in point_map:
                    if point_map[x] != y:
                        ok = False
                        break
                elif y in point_inv:
                    ok = False
                    break
                else:
                    point_map[x] = y
                    point_inv[y] = x
                    added.append(x)
            if ok:
                line_map[a] = b
                used[b] = True
                yield from extend(depth + 1)
                used[b] = False
                line_map[a] = -1
            for x in added:
                del point_inv[point_map.pop(x)]

    yield from extend(0)


def are_isomorphic(c1: Configuration, c2: Configuration) -> Optional[Witness]:
    # First isomorphism found, or None
    return next(isomorphisms(c1, c2), None)


def automorphism_count(c: Configuration) -> int:
    refinement = Refinement(c)
    total = sum(1 for _ in isomorphisms(c, c, refinement, refinement))
    logger.debug("Automorphisms counted", n=c.n, k=c.k, count=total)
    return total


@dataclass(frozen=True)
class SelfDuality:
    # Truthy exactly when a duality exists
    self_dual: bool
    witness: Optional[Witness] = None

    def __bool__(self) -> bool:
        return self.self_dual


def is_self_dual(c: Configuration) -> SelfDuality:
    # Isomorphism onto the dual; clique and coclique multisets must agree first
    if clique_distribution(c) != coclique_distribution(c):
        return SelfDuality(False)
    witness = are_isomorphic(c, dualize(c))
    return SelfDuality(witness is not None, witness)


def levi_automorphism_count(c: Configuration) -> int:
    # Order of the automorphism group of the incidence graph
    count = automorphism_count(c)
    return 2 * count if is_self_dual(c) else count


def check_duality(c: Configuration, point_to_line: Sequence[int], line_to_point: Sequence[int]) -> bool:
    # p on l exactly when line_to_point[l] lies on point_to_line[p]
    if sorted(point_to_line) != list(range(len(c.lines))) or sorted(line_to_point) != list(range(c.n)):
        return False
    lines = [set(line) for line in c.lines]
    return all(
        (p in lines[j]) == (line_to_point[j] in lines[point_to_line[p]])
        for p in range(c.n)
        for j in range(len(c.lines))
    )


def is_polarity(c: Configuration, point_to_line: Sequence[int]) -> bool:
    # Involutive duality: the line map is the inverse of the point map
    inverse = [0] * len(point_to_line)
    for p, j in enumerate(point_to_line):
        if not 0 <= j < len(inverse):
            return False
        inverse[j] = p
    return check_duality(c, point_to_line, inverse)


def label_polarity(c: Configuration) -> List[int]:
    # Point labelled X goes to the line named x
    if c.point_labels is None or c.line_labels is None:
        raise ConfsweepError("configuration carries no labels")
    by_name: Mapping[str, int] = {name.lower(): j for j, name in enumerate(c.line_labels)}
    return [by_name[label.lower()] for label in c.point_labels]
