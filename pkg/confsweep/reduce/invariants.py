# Clique/coclique distributions and their derivative refinements
import hashlib
from collections import Counter
from typing import Dict, List, NamedTuple, Tuple

import networkx as nx
import structlog

from confsweep.incidence import Configuration, collinearity_graph, dualize


logger = structlog.get_logger(__name__)

DIGEST_SIZE = 12


def clique_vectors(c: Configuration) -> List[Tuple[int, ...]]:
    # gamma_j(p) for j = 3 .. largest clique size, indexed by point
    graph = collinearity_graph(c)
    counts: Dict[int, Counter] = {p: Counter() for p in range(c.n)}
    largest = 2
    for clique in nx.enumerate_all_cliques(graph):
        size = len(clique)
        if size < 3:
            continue
        largest = max(largest, size)
        for p in clique:
            counts[p][size] += 1
    return [tuple(counts[p][j] for j in range(3, largest + 1)) for p in range(c.n)]


def clique_distribution(c: Configuration) -> Tuple[Tuple[int, ...], ...]:
    # Multiset of per-point clique vectors
    return tuple(sorted(clique_vectors(c)))


def coclique_vectors(c: Configuration) -> List[Tuple[int, ...]]:
    # delta_j(l): cliques of the dual, indexed by line
    return clique_vectors(dualize(c))


def coclique_distribution(c: Configuration) -> Tuple[Tuple[int, ...], ...]:
    return tuple(sorted(coclique_vectors(c)))


def _digest(payload: object) -> str:
    return hashlib.blake2b(repr(payload).encode("utf-8"), digest_size=DIGEST_SIZE).hexdigest()


class Colors(NamedTuple):
    # One color per point and per line at a given level
    points: Tuple[str, ...]
    lines: Tuple[str, ...]

    @property
    def cells(self) -> int:
        return len(set(self.points)) + len(set(self.lines))


class InvariantKey(NamedTuple):
    # Comparable relabeling-invariant summary at one level
    level: int
    points: Tuple[str, ...]
    lines: Tuple[str, ...]


def initial_colors(c: Configuration) -> Colors:
    # Level 0: clique vector per point, coclique vector per line
    return Colors(
        points=tuple(_digest(("p", v)) for v in clique_vectors(c)),
        lines=tuple(_digest(("l", v)) for v in coclique_vectors(c)),
    )


def derive(c: Configuration, colors: Colors) -> Colors:
    # Lines aggregate their points, points aggregate their lines; own color kept
    through: List[List[int]] = [[] for _ in range(c.n)]
    for j, line in enumerate(c.lines):
        for p in line:
            through[p].append(j)
    lines = tuple(
        _digest((colors.lines[j], tuple(sorted(colors.points[p] for p in line))))
        for j, line in enumerate(c.lines)
    )
    points = tuple(
        _digest((colors.points[p], tuple(sorted(colors.lines[j] for j in through[p]))))
        for p in range(c.n)
    )
    return Colors(points=points, lines=lines)


def key_of(colors: Colors, level: int) -> InvariantKey:
    return InvariantKey(level=level, points=tuple(sorted(colors.points)), lines=tuple(sorted(colors.lines)))


def refines(finer: Colors, coarser: Colors) -> bool:
    # Every cell of finer lies inside one cell of coarser
    for new, old in ((finer.points, coarser.points), (finer.lines, coarser.lines)):
        seen: Dict[str, str] = {}
        for a, b in zip(new, old):
            if seen.setdefault(a, b) != b:
                return False
    return True


class Refinement:
    # Lazily computed derivative levels of one configuration

    def __init__(self, c: Configuration):
        self.config = c
        self.levels: List[Colors] = [initial_colors(c)]

    def colors(self, level: int) -> Colors:
        while len(self.levels) <= level:
            self.levels.append(derive(self.config, self.levels[-1]))
        return self.levels[level]

    def key(self, level: int) -> InvariantKey:
        return key_of(self.colors(level), level)

    def cells(self, level: int) -> int:
        return self.colors(level).cells

    def stable_level(self) -> int:
        # First level whose derivative adds no cells
        level = 0
        while self.cells(level + 1) != self.cells(level):
            level += 1
        return level


def invariant_key(c: Configuration, level: int = 0) -> InvariantKey:
    return Refinement(c).key(level)