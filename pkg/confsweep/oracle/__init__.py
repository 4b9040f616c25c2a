from .combinatorial import enumerate_combinatorial, isomorphic_by_points
from .geometry import RationalLine, RationalPoint, load_coordinates, verify_realization
from .replay import naive_sweep_check

__all__ = [
    "RationalLine",
    "RationalPoint",
    "enumerate_combinatorial",
    "isomorphic_by_points",
    "load_coordinates",
    "naive_sweep_check",
    "verify_realization",
]
