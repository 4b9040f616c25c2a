# Invariants, isomorphism search, dualities and the multiscale reducer
import random

import pytest

from confsweep.errors import ConfsweepError, MixedParameters
from confsweep.incidence import dualize, relabel, serialize
from confsweep.known import known_count
from confsweep.storage import record_configuration
from confsweep.reduce import (
    Refinement,
    are_isomorphic,
    automorphism_count,
    check_duality,
    clique_distribution,
    clique_vectors,
    coclique_distribution,
    invariant_key,
    is_polarity,
    is_self_dual,
    label_polarity,
    levi_automorphism_count,
    reduce_all,
    refines,
)


def shuffled(c, seed):
    # Random relabeling of points and lines
    rng = random.Random(seed)
    points = list(range(c.n))
    lines = list(range(len(c.lines)))
    rng.shuffle(points)
    rng.shuffle(lines)
    return relabel(c, points, lines)


def test_fano_clique_vectors(fano):
    # Collinearity graph of the Fano plane is K7
    assert clique_vectors(fano) == [(15, 20, 15, 6, 1)] * 7
    assert clique_distribution(fano) == coclique_distribution(fano)


@pytest.mark.parametrize(
    "name",
    ["fano", "pappus", "topological_17_4", "geometric_18_4_aut24", "geometric_18_4_aut2"],
)
def test_invariant_key_ignores_labels(request, name):
    c = request.getfixturevalue(name)
    expected = [invariant_key(c, level) for level in range(3)]

    for seed in range(100):
        refinement = Refinement(shuffled(c, seed))
        assert [refinement.key(level) for level in range(3)] == expected



def test_derivatives_refine(geometric_18_4_aut2):
    refinement = Refinement(geometric_18_4_aut2)

    for level in range(3):
        assert refines(refinement.colors(level + 1), refinement.colors(level))
        assert refinement.cells(level + 1) >= refinement.cells(level)
    stable = refinement.stable_level()
    assert refinement.cells(stable + 1) == refinement.cells(stable)


def test_relabeled_copies_are_isomorphic(pappus):
    moved = shuffled(pappus, 11)

    witness = are_isomorphic(pappus, moved)

    assert witness is not None
    point_map, line_map = witness
    for j, line in enumerate(pappus.lines):
        assert tuple(sorted(point_map[p] for p in line)) == moved.lines[line_map[j]]


def test_distinct_18_4_are_not_isomorphic(geometric_18_4_aut24, geometric_18_4_aut2):
    assert are_isomorphic(geometric_18_4_aut24, geometric_18_4_aut2) is None


@pytest.mark.parametrize(
    "name,expected",
    [("fano", 168), ("geometric_18_4_aut24", 24), ("geometric_18_4_aut2", 2)],
)
def test_automorphism_counts(request, name, expected):
    assert automorphism_count(request.getfixturevalue(name)) == expected


def test_levi_automorphisms(geometric_18_4_aut24, geometric_18_4_aut2):
    assert levi_automorphism_count(geometric_18_4_aut24) == 48
    assert levi_automorphism_count(geometric_18_4_aut2) == 4


def test_self_duality_witness(topological_17_4):
    result = is_self_dual(topological_17_4)

    assert result
    point_map, line_map = result.witness
    # An isomorphism onto the dual sends points to lines and lines to points
    assert check_duality(topological_17_4, point_map, line_map)


@pytest.mark.parametrize("name", ["topological_17_4", "geometric_18_4_aut24", "geometric_18_4_aut2"])
def test_labels_define_a_polarity(request, name):
    c = request.getfixturevalue(name)

    assert is_polarity(c, label_polarity(c))


def test_polarity_needs_labels(topological_17_4):
    with pytest.raises(ConfsweepError):
        label_polarity(shuffled(topological_17_4, 1))


def test_check_duality_rejects_non_bijections(fano):
    assert not check_duality(fano, [0] * 7, list(range(7)))


def test_reduce_merges_relabelings(geometric_18_4_aut24, geometric_18_4_aut2):
    inputs = [geometric_18_4_aut24, shuffled(geometric_18_4_aut24, 5), geometric_18_4_aut2]
    inputs += [shuffled(geometric_18_4_aut2, seed) for seed in range(4)]

    classes, report = reduce_all(inputs)

    assert report.inputs == 7
    assert report.classes == 2
    assert sorted(cls.members for cls in classes) == [2, 5]
    assert all(cls.self_dual for cls in classes)
    assert report.known_topological == 16
    assert report.matches_known is False
    assert [serialize(cls.representative) for cls in classes] == sorted(
        serialize(cls.representative) for cls in classes
    )


def test_reduce_is_order_independent(geometric_18_4_aut24, geometric_18_4_aut2):
    inputs = [geometric_18_4_aut24, geometric_18_4_aut2, shuffled(geometric_18_4_aut2, 9)]

    forward, _ = reduce_all(inputs)
    backward, _ = reduce_all(reversed(inputs))

    assert forward == backward


def test_reduce_parallel_matches_serial(geometric_18_4_aut24, geometric_18_4_aut2):
    inputs = [geometric_18_4_aut24, geometric_18_4_aut2, shuffled(geometric_18_4_aut2, 2)]

    serial, _ = reduce_all(inputs, jobs=1)
    parallel, _ = reduce_all(inputs, jobs=2)

    assert serial == parallel


def test_reduce_empty_input():
    classes, report = reduce_all([])

    assert classes == []
    assert report.classes == 0
    assert report.n is None


def test_reduce_rejects_mixed_parameters(fano, pappus):
    with pytest.raises(MixedParameters):
        reduce_all([fano, pappus])


def test_known_counts():
    assert known_count("topological", 17, 4) == 1
    assert known_count("combinatorial", 7, 3) == 1
    assert known_count("geometric", 10, 3) == 9
    assert known_count("topological", 12, 4) == 0
    assert known_count("topological", 25, 4) is None
    with pytest.raises(ConfsweepError):
        known_count("projective", 9, 3)


def test_fano_colors_stay_uniform(fano):
    refinement = Refinement(fano)

    for level in range(3):
        colors = refinement.colors(level)
        assert len(set(colors.points)) == 1
        assert len(set(colors.lines)) == 1


@pytest.mark.parametrize("name", ["fano", "topological_17_4"])
def test_isomorphic_to_own_dual(request, name):
    c = request.getfixturevalue(name)

    assert are_isomorphic(c, dualize(c)) is not None


def test_reduce_is_idempotent(geometric_18_4_aut24, geometric_18_4_aut2):
    inputs = [geometric_18_4_aut24, geometric_18_4_aut2]
    inputs += [shuffled(c, seed) for c in inputs for seed in range(3)]
    classes, _ = reduce_all(inputs)

    again, report = reduce_all(cls.representative for cls in classes)

    assert report.classes == len(classes) == 2
    assert [serialize(cls.representative) for cls in again] == [serialize(cls.representative) for cls in classes]
    assert all(cls.members == 1 for cls in again)
    assert [cls.self_dual for cls in again] == [cls.self_dual for cls in classes]


def test_reduced_sweep_output_is_stable(sweep_9_3):
    classes, _ = reduce_all(record_configuration(record) for record in sweep_9_3)
    again, _ = reduce_all(cls.representative for cls in classes)

    assert [serialize(cls.representative) for cls in again] == [serialize(cls.representative) for cls in classes]
