# Construction, validation, duality and canonical form of configurations
import json
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Type

import networkx as nx
import numpy as np
import structlog

from confsweep.errors import (
    ConfigurationError,
    Disconnected,
    DuplicatePointInLine,
    RecordFormatError,
    RegularityViolation,
    SharedPairViolation,
)
from confsweep.incidence.models import Configuration, VerificationReport


logger = structlog.get_logger(__name__)


def incidence_matrix(c: Configuration) -> np.ndarray:
    # Rows are lines, columns are points
    matrix = np.zeros((len(c.lines), c.n), dtype=np.int64)
    for j, line in enumerate(c.lines):
        for p in line:
            if 0 <= p < c.n:
                matrix[j, p] = 1
    return matrix


def levi_graph(c: Configuration) -> nx.Graph:
    # Bipartite point-line incidence graph
    graph = nx.Graph()
    graph.add_nodes_from(("p", i) for i in range(c.n))
    graph.add_nodes_from(("l", j) for j in range(len(c.lines)))
    for j, line in enumerate(c.lines):
        graph.add_edges_from((("l", j), ("p", p)) for p in line)
    return graph


def collinearity_graph(c: Configuration) -> nx.Graph:
    # Points joined when some line carries both
    graph = nx.Graph()
    graph.add_nodes_from(range(c.n))
    for line in c.lines:
        for a_idx, a in enumerate(line):
            for b in line[a_idx + 1:]:
                graph.add_edge(a, b)
    return graph


def _violations(c: Configuration) -> List[Tuple[Type[ConfigurationError], str]]:
    found: List[Tuple[Type[ConfigurationError], str]] = []

    if len(c.lines) != c.n:
        found.append((RegularityViolation, f"expected {c.n} lines, got {len(c.lines)}"))

    for j, line in enumerate(c.lines):
        if len(set(line)) != len(line):
            found.append((DuplicatePointInLine, f"line {j} repeats a point"))
        elif len(line) != c.k:
            found.append((RegularityViolation, f"line {j} has {len(line)} points, expected {c.k}"))
        outside = [p for p in line if not 0 <= p < c.n]
        if outside:
            found.append((RegularityViolation, f"line {j} uses points outside [0, {c.n}): {outside}"))
    if found:
        return found

    matrix = incidence_matrix(c)
    degrees = matrix.sum(axis=0)
    for p in np.flatnonzero(degrees != c.k):
        found.append((RegularityViolation, f"point {int(p)} lies on {int(degrees[p])} lines, expected {c.k}"))

    meets = matrix @ matrix.T
    np.fill_diagonal(meets, 0)
    for a, b in zip(*np.nonzero(np.triu(meets) > 1)):
        found.append((SharedPairViolation, f"lines {int(a)} and {int(b)} share {int(meets[a, b])} points"))

    if not found and not nx.is_connected(levi_graph(c)):
        found.append((Disconnected, "incidence graph is not connected"))
    return found


def verify(c: Configuration) -> VerificationReport:
    # Check all configuration rules and report derived crossing counts
    per_line = c.n - 1 - c.k * (c.k - 1)
    violations = [f"{kind.__name__}: {message}" for kind, message in _violations(c)]
    return VerificationReport(
        valid=not violations,
        violations=violations,
        per_line_two_crossings=per_line,
        total_two_crossings=c.n * per_line // 2,
    )


def ensure_valid(c: Configuration) -> Configuration:
    # Raise the first violated rule
    found = _violations(c)
    if found:
        kind, message = found[0]
        raise kind(message)
    return c


def from_line_table(
    rows: Sequence[Sequence[str]],
    line_labels: Optional[Sequence[str]] = None,
) -> Configuration:
    # Map labels to indices in first-appearance order and validate
    if not rows:
        raise RegularityViolation("empty line table")
    k = len(rows[0])
    index: Dict[str, int] = {}
    lines: List[Tuple[int, ...]] = []
    for j, row in enumerate(rows):
        labels = [str(label) for label in row]
        if len(set(labels)) != len(labels):
            raise DuplicatePointInLine(f"row {j} repeats a label: {labels}")
        if len(labels) != k:
            raise RegularityViolation(f"row {j} has {len(labels)} labels, expected {k}")
        for label in labels:
            index.setdefault(label, len(index))
        lines.append(tuple(index[label] for label in labels))

    n = len(rows)
    if len(index) != n:
        raise RegularityViolation(f"{len(index)} distinct points for {n} lines")

    config = Configuration(
        n=n,
        k=k,
        lines=lines,
        point_labels=tuple(index),
        line_labels=tuple(line_labels) if line_labels is not None else None,
    )
    return ensure_valid(config)


def parse_table_text(text: str) -> Configuration:
    # One row per line, whitespace separated labels, optional leading "name:"
    rows: List[List[str]] = []
    names: List[str] = []
    for raw in text.splitlines():
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        tokens = content.split()
        if tokens[0].endswith(":"):
            names.append(tokens[0][:-1])
            tokens = tokens[1:]
        rows.append(tokens)
    if names and len(names) != len(rows):
        raise RecordFormatError("either every row or no row carries a line name")
    return from_line_table(rows, line_labels=names or None)


def dualize(c: Configuration) -> Configuration:
    # Point i of the dual is line i; dual line j collects the lines through point j
    transposed = incidence_matrix(c).T
    lines = [tuple(int(j) for j in np.flatnonzero(row)) for row in transposed]
    return Configuration(
        n=len(c.lines),
        k=c.k,
        lines=lines,
        point_labels=c.line_labels,
        line_labels=c.point_labels,
    )


def relabel(
    c: Configuration,
    point_perm: Sequence[int],
    line_perm: Optional[Sequence[int]] = None,
) -> Configuration:
    # Point p becomes point_perm[p]; line j moves to position line_perm[j]
    images = [tuple(point_perm[p] for p in line) for line in c.lines]
    if line_perm is not None:
        placed: List[Tuple[int, ...]] = [()] * len(images)
        for j, image in enumerate(images):
            placed[line_perm[j]] = image
        images = placed
    return Configuration(n=c.n, k=c.k, lines=images)


def canonical(c: Configuration) -> Configuration:
    # Greedy smallest-line-first renumbering; sorted lines, points numbered by first appearance
    mapping: Dict[int, int] = {}
    remaining = list(c.lines)
    ordered: List[Tuple[int, ...]] = []
    while remaining:
        best_key = None
        best_pos = 0
        for pos, line in enumerate(remaining):
            fresh = len([p for p in line if p not in mapping])
            known = [mapping[p] for p in line if p in mapping]
            image = tuple(sorted(known + list(range(len(mapping), len(mapping) + fresh))))
            key = (image, line)
            if best_key is None or key < best_key:
                best_key, best_pos = key, pos
        line = remaining.pop(best_pos)
        for p in sorted(p for p in line if p not in mapping):
            mapping[p] = len(mapping)
        ordered.append(best_key[0])
    return Configuration(n=c.n, k=c.k, lines=ordered)


def to_record(c: Configuration) -> Dict[str, object]:
    # Plain dict in canonical form
    form = canonical(c)
    return {"n": form.n, "k": form.k, "lines": [list(line) for line in form.lines]}


def from_record(record: Mapping[str, object]) -> Configuration:
    # Parse and validate a {"n","k","lines"} mapping
    try:
        config = Configuration(n=record["n"], k=record["k"], lines=record["lines"])
    except (KeyError, TypeError, ValueError) as e:
        raise RecordFormatError(f"bad configuration record: {e}") from e
    return ensure_valid(config)


def serialize(c: Configuration) -> str:
    # Compact canonical JSON
    return json.dumps(to_record(c), separators=(",", ":"))


def is_identical(a: Configuration, b: Configuration) -> bool:
    # Same canonical serialization
    return a.n == b.n and a.k == b.k and canonical(a).lines == canonical(b).lines
