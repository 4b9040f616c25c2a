# Exact rational homogeneous coordinates and the realization verifier
from fractions import Fraction
from typing import Sequence, Tuple, Union

import structlog

from confsweep.errors import ConfsweepError, ZeroVector
from confsweep.incidence import Configuration


logger = structlog.get_logger(__name__)

Number = Union[int, str, Fraction]


def _normalize(coords: Tuple[Fraction, Fraction, Fraction]) -> Tuple[Fraction, Fraction, Fraction]:
    # Scale so the first non-zero entry is 1
    pivot = next(x for x in coords if x != 0)
    return tuple(x / pivot for x in coords)


class _Homogeneous:
    # Three exact rationals, not all zero
    __slots__ = ("coords",)

    def __init__(self, x: Number, y: Number, z: Number):
        self.coords: Tuple[Fraction, Fraction, Fraction] = tuple(Fraction(v) for v in (x, y, z))
        if all(v == 0 for v in self.coords):
            raise ZeroVector(f"{type(self).__name__} with all coordinates zero")

    def __eq__(self, other: object) -> bool:
        # Equal up to a non-zero scalar: cross product vanishes
        if not isinstance(other, type(self)):
            return NotImplemented
        (a, b, c), (d, e, f) = self.coords, other.coords
        return b * f - c * e == 0 and c * d - a * f == 0 and a * e - b * d == 0

    def __hash__(self) -> int:
        return hash(_normalize(self.coords))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(str(v) for v in self.coords)})"

    def scaled(self, factor: Number):
        factor = Fraction(factor)
        if factor == 0:
            raise ZeroVector("scaling by zero")
        return type(self)(*(v * factor for v in self.coords))


class RationalPoint(_Homogeneous):
    pass


class RationalLine(_Homogeneous):
    def contains(self, point: RationalPoint) -> bool:
        return sum(a * b for a, b in zip(self.coords, point.coords)) == 0


def verify_realization(
    pts: Sequence[RationalPoint],
    lns: Sequence[RationalLine],
    c: Configuration,
) -> bool:
    # Incidences exactly as c says, all points and all lines pairwise distinct
    if len(pts) != c.n or len(lns) != len(c.lines):
        raise ConfsweepError(f"need {c.n} points and {len(c.lines)} lines, got {len(pts)} and {len(lns)}")
    for j, line in enumerate(c.lines):
        members = set(line)
        for i, point in enumerate(pts):
            if lns[j].contains(point) != (i in members):
                logger.debug("Incidence mismatch", point=i, line=j)
                return False
    if len(set(pts)) != len(pts) or len(set(lns)) != len(lns):
        logger.debug("Coincident points or lines")
        return False
    return True


def load_coordinates(data: dict) -> Tuple[list, list]:
    # {"points": [[x, y, z], ...], "lines": [[a, b, c], ...]}; entries may be "p/q" strings
    try:
        points = [RationalPoint(*row) for row in data["points"]]
        lines = [RationalLine(*row) for row in data["lines"]]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise ConfsweepError(f"bad coordinate file: {e}") from e
    return points, lines
