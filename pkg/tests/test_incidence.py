# Configuration validation, duality and canonical form
import json

import numpy as np
import pytest

from confsweep.errors import (
    ConfigurationError,
    Disconnected,
    DuplicatePointInLine,
    RecordFormatError,
    RegularityViolation,
    SharedPairViolation,
)
from confsweep.incidence import (
    Configuration,
    canonical,
    dualize,
    ensure_valid,
    from_line_table,
    from_record,
    incidence_matrix,
    is_identical,
    parse_table_text,
    relabel,
    serialize,
    to_record,
    verify,
)


@pytest.fixture
def two_fanos(fano):
    # Regular and pair-free, but in two components
    shifted = [tuple(p + 7 for p in line) for line in fano.lines]
    return Configuration(n=14, k=3, lines=list(fano.lines) + shifted)


def test_fano_is_valid(fano):
    report = verify(fano)

    assert report.valid
    assert report.violations == []
    assert report.per_line_two_crossings == 0
    assert report.total_two_crossings == 0


def test_derived_crossing_counts(pappus, topological_17_4):
    # n - 1 - k(k-1) per line, n times that over two in total
    assert verify(pappus).per_line_two_crossings == 2
    assert verify(pappus).total_two_crossings == 9
    assert verify(topological_17_4).per_line_two_crossings == 4
    assert verify(topological_17_4).total_two_crossings == 34


def test_labels_follow_first_appearance(topological_17_4):
    assert topological_17_4.n == 17
    assert topological_17_4.k == 4
    assert topological_17_4.line_labels == tuple("abcdefghijklmnopq")
    assert topological_17_4.point_labels[:4] == ("N", "P", "O", "Q")
    assert topological_17_4.lines[0] == (0, 1, 2, 3)


def test_duplicate_point_reported():
    config = Configuration(n=3, k=2, lines=[(0, 0), (1, 2), (0, 2)])

    report = verify(config)

    assert not report.valid
    assert report.violations[0].startswith("DuplicatePointInLine")
    with pytest.raises(DuplicatePointInLine):
        ensure_valid(config)


def test_wrong_line_count():
    with pytest.raises(RegularityViolation):
        ensure_valid(Configuration(n=4, k=2, lines=[(0, 1), (2, 3)]))


def test_point_degree_checked():
    # Point 0 on three lines, point 3 on one
    config = Configuration(n=4, k=2, lines=[(0, 1), (0, 2), (0, 3), (1, 2)])

    report = verify(config)

    assert not report.valid
    assert any("point 0 lies on 3 lines" in v for v in report.violations)


def test_shared_pair():
    config = Configuration(n=4, k=2, lines=[(0, 1), (0, 1), (2, 3), (2, 3)])

    with pytest.raises(SharedPairViolation):
        ensure_valid(config)


def test_disconnected(two_fanos):
    with pytest.raises(Disconnected):
        ensure_valid(two_fanos)


def test_row_length_mismatch():
    with pytest.raises(RegularityViolation):
        from_line_table([["A", "B", "C"], ["A", "D"]])


def test_table_with_partial_names():
    with pytest.raises(RecordFormatError):
        parse_table_text("a: A B C\nA D E\n")


def test_incidence_matrix(topological_17_4):
    matrix = incidence_matrix(topological_17_4)
    meets = matrix @ matrix.T
    np.fill_diagonal(meets, 0)

    assert matrix.shape == (17, 17)
    assert set(matrix.sum(axis=0)) == {4}
    assert set(matrix.sum(axis=1)) == {4}
    assert meets.max() == 1


def test_dual_twice_is_identity(pappus):
    dual = dualize(pappus)

    assert dual.n == 9
    assert ensure_valid(dual) is dual
    assert is_identical(dualize(dual), pappus)


def test_dual_swaps_labels(topological_17_4):
    dual = dualize(topological_17_4)

    assert dual.point_labels == topological_17_4.line_labels
    assert dual.line_labels == topological_17_4.point_labels


def test_canonical_is_idempotent(topological_17_4):
    form = canonical(topological_17_4)

    assert canonical(form) == form
    assert list(form.lines) == sorted(form.lines)
    assert form.lines[0] == (0, 1, 2, 3)


def test_relabel_keeps_validity(pappus):
    perm = [8, 7, 6, 5, 4, 3, 2, 1, 0]

    moved = relabel(pappus, perm, line_perm=list(reversed(range(9))))

    assert verify(moved).valid
    assert moved.lines[-1] == tuple(sorted(perm[p] for p in pappus.lines[0]))


def test_serialize_is_compact_canonical_json(fano):
    text = serialize(fano)

    assert " " not in text
    assert text.startswith('{"n":7,"k":3,"lines":[[0,1,2],')
    assert json.loads(text) == to_record(fano)


def test_record_round_trip(topological_17_4):
    record = json.loads(serialize(topological_17_4))

    assert from_record(record) == canonical(topological_17_4)


def test_from_record_errors():
    with pytest.raises(RecordFormatError):
        from_record({"n": 7, "k": 3})
    with pytest.raises(ConfigurationError):
        from_record({"n": 3, "k": 2, "lines": [[0, 1], [0, 1], [1, 2]]})
