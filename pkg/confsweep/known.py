# Published counts of (n_k) configurations up to isomorphism
from typing import Dict, Optional, Tuple

from confsweep.errors import ConfsweepError


COMBINATORIAL: Dict[Tuple[int, int], int] = {
    (7, 3): 1, (8, 3): 1, (9, 3): 3, (10, 3): 10, (11, 3): 31, (12, 3): 229, (13, 3): 2036,
    (14, 3): 21399, (15, 3): 245342, (16, 3): 3004881, (17, 3): 38904499, (18, 3): 530452205,
    (19, 3): 7640941062,
    (13, 4): 1, (14, 4): 1, (15, 4): 4, (16, 4): 19, (17, 4): 1972, (18, 4): 971171, (19, 4): 269224652,
}

TOPOLOGICAL: Dict[Tuple[int, int], int] = {
    (7, 3): 0, (8, 3): 0, (9, 3): 3, (10, 3): 10, (11, 3): 31, (12, 3): 229,
    (13, 4): 0, (14, 4): 0, (15, 4): 0, (16, 4): 0, (17, 4): 1, (18, 4): 16, (19, 4): 4028,
}

GEOMETRIC: Dict[Tuple[int, int], int] = {
    (7, 3): 0, (8, 3): 0, (9, 3): 3, (10, 3): 9, (11, 3): 31, (12, 3): 229,
    (13, 4): 0, (14, 4): 0, (15, 4): 0, (16, 4): 0, (17, 4): 0, (18, 4): 2,
}

SELF_DUAL_TOPOLOGICAL: Dict[Tuple[int, int], int] = {(19, 4): 222}

_FAMILIES = {
    "combinatorial": COMBINATORIAL,
    "topological": TOPOLOGICAL,
    "geometric": GEOMETRIC,
    "self_dual_topological": SELF_DUAL_TOPOLOGICAL,
}


def known_count(family: str, n: int, k: int) -> Optional[int]:
    # None when the value is not tabulated
    try:
        table = _FAMILIES[family]
    except KeyError as e:
        raise ConfsweepError(f"unknown family {family!r}") from e
    if k in (3, 4) and n < (7 if k == 3 else 13):
        return 0
    return table.get((n, k))
