from .invariants import (
    Colors,
    InvariantKey,
    Refinement,
    clique_distribution,
    clique_vectors,
    coclique_distribution,
    coclique_vectors,
    derive,
    initial_colors,
    invariant_key,
    refines,
)
from .isomorphism import (
    SelfDuality,
    are_isomorphic,
    automorphism_count,
    check_duality,
    is_polarity,
    is_self_dual,
    isomorphisms,
    label_polarity,
    levi_automorphism_count,
)
from .reducer import EquivalenceClass, LevelStats, ReductionReport, reduce_all

__all__ = [
    "Colors",
    "EquivalenceClass",
    "InvariantKey",
    "LevelStats",
    "ReductionReport",
    "Refinement",
    "SelfDuality",
    "are_isomorphic",
    "automorphism_count",
    "check_duality",
    "clique_distribution",
    "clique_vectors",
    "coclique_distribution",
    "coclique_vectors",
    "derive",
    "initial_colors",
    "invariant_key",
    "is_polarity",
    "is_self_dual",
    "isomorphisms",
    "label_polarity",
    "levi_automorphism_count",
    "reduce_all",
    "refines",
]
