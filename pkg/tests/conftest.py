# Shared fixtures: line tables and small sweep outputs
import json
from pathlib import Path

import pytest

from confsweep.incidence import Configuration, parse_table_text
from confsweep.main import configure_logging
from confsweep.sweep import SweepOptions, enumerate_sweep


FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    # Keep stdout free for command output
    configure_logging("WARNING")


def load_table(name: str) -> Configuration:
    return parse_table_text((FIXTURES / name).read_text(encoding="utf-8"))


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def fano():
    # The unique (7_3)
    return load_table("fano.txt")


@pytest.fixture
def pappus():
    return load_table("pappus.txt")


@pytest.fixture
def pappus_coords():
    # Rational homogeneous coordinates in the point and line order of pappus.txt
    return json.loads((FIXTURES / "pappus_coords.json").read_text(encoding="utf-8"))


@pytest.fixture
def topological_17_4():
    # The only topological (17_4)
    return load_table("topological_17_4.txt")


@pytest.fixture
def geometric_18_4_aut24():
    return load_table("geometric_18_4_aut24.txt")


@pytest.fixture
def geometric_18_4_aut2():
    return load_table("geometric_18_4_aut2.txt")


@pytest.fixture(scope="session")
def sweep_9_3():
    # Raw sweep output for (9_3), single process
    return list(enumerate_sweep(9, 3, SweepOptions(jobs=1, split_depth=1)))


@pytest.fixture(scope="session")
def sweep_10_3():
    return list(enumerate_sweep(10, 3, SweepOptions(jobs=1, split_depth=1)))
