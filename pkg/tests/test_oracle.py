# Brute-force enumeration and exact rational realizations
import random

import pytest

from confsweep.errors import BudgetExceeded, ConfsweepError, ZeroVector
from confsweep.incidence import relabel, verify
from confsweep.oracle import (
    RationalLine,
    RationalPoint,
    enumerate_combinatorial,
    isomorphic_by_points,
    load_coordinates,
    verify_realization,
)
from confsweep.reduce import are_isomorphic, reduce_all
from confsweep.storage import record_configuration


@pytest.mark.parametrize("n,expected", [(6, 0), (7, 1), (8, 1), (9, 3)])
def test_small_k3_counts(n, expected):
    found = enumerate_combinatorial(n, 3)

    assert len(found) == expected
    assert all(verify(c).valid for c in found)


def test_fano_is_the_only_7_3(fano):
    (only,) = enumerate_combinatorial(7, 3)

    assert isomorphic_by_points(only, fano) is not None


@pytest.mark.slow
def test_ten_combinatorial_10_3():
    assert len(enumerate_combinatorial(10, 3)) == 10


@pytest.mark.parametrize("n,k", [(11, 3), (14, 4), (5, 2)])
def test_outside_the_budget(n, k):
    with pytest.raises(BudgetExceeded):
        enumerate_combinatorial(n, k)


def test_no_small_k4():
    assert enumerate_combinatorial(12, 4) == []


def test_point_map_isomorphism(pappus):
    rng = random.Random(7)
    perm = list(range(9))
    rng.shuffle(perm)
    moved = relabel(pappus, perm)

    images = isomorphic_by_points(pappus, moved)

    assert images is not None
    mapped = {tuple(sorted(images[p] for p in line)) for line in pappus.lines}
    assert mapped == set(moved.lines)


def test_pairwise_distinct_classes():
    found = enumerate_combinatorial(9, 3)

    for i, a in enumerate(found):
        for b in found[i + 1:]:
            assert isomorphic_by_points(a, b) is None
            assert are_isomorphic(a, b) is None


def test_every_topological_9_3_is_combinatorial(sweep_9_3):
    classes = enumerate_combinatorial(9, 3)

    for record in sweep_9_3:
        config = record_configuration(record)
        assert any(are_isomorphic(config, c) is not None for c in classes)


def test_pappus_is_realized(pappus, pappus_coords):
    points, lines = load_coordinates(pappus_coords)

    assert verify_realization(points, lines, pappus)


def test_moved_point_breaks_the_realization(pappus, pappus_coords):
    pappus_coords["points"][6] = [2, 2, 5]
    points, lines = load_coordinates(pappus_coords)

    assert not verify_realization(points, lines, pappus)


def test_realization_ignores_scaling(pappus, pappus_coords):
    points, lines = load_coordinates(pappus_coords)

    points = [p.scaled(j + 2) for j, p in enumerate(points)]
    lines = [line.scaled("-1/3") for line in lines]

    assert verify_realization(points, lines, pappus)


def test_size_mismatch(pappus, pappus_coords):
    points, lines = load_coordinates(pappus_coords)

    with pytest.raises(ConfsweepError):
        verify_realization(points[:-1], lines, pappus)


def test_homogeneous_equality():
    assert RationalPoint(1, 2, 3) == RationalPoint(2, 4, 6)
    assert hash(RationalPoint(1, 2, 3)) == hash(RationalPoint("-1/3", "-2/3", -1))
    assert RationalPoint(1, 2, 3) != RationalPoint(1, 2, 4)
    assert RationalLine(1, -1, 0).contains(RationalPoint("1/2", "1/2", 7))


def test_zero_vector():
    with pytest.raises(ZeroVector):
        RationalPoint(0, 0, 0)
    with pytest.raises(ZeroVector):
        RationalLine(1, 0, 0).scaled(0)


def test_bad_coordinate_file():
    with pytest.raises(ConfsweepError):
        load_coordinates({"points": [[1, 2]]})


@pytest.mark.slow
def test_single_combinatorial_13_4():
    assert len(enumerate_combinatorial(13, 4)) == 1


@pytest.mark.parametrize("n,expected", [(7, 1), (8, 1), (9, 3)])
def test_reducer_recovers_oracle_classes(n, expected):
    classes = enumerate_combinatorial(n, 3)
    rng = random.Random(n)
    copies = []
    for c in classes:
        for _ in range(5):
            points, lines = list(range(c.n)), list(range(len(c.lines)))
            rng.shuffle(points)
            rng.shuffle(lines)
            copies.append(relabel(c, points, lines))
    rng.shuffle(copies)

    reduced, report = reduce_all(copies)

    assert report.classes == expected
    assert all(cls.members == 5 for cls in reduced)
    for c in classes:
        assert sum(1 for cls in reduced if are_isomorphic(c, cls.representative)) == 1
