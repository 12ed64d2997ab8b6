import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from dmrealize.graph import cycle_graph, generate_generalized_petersen, generate_kneser, path_graph  # noqa: E402
from dmrealize.metric import all_pairs_distances  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def petersen():
    return generate_generalized_petersen(5, 2)


@pytest.fixture(scope="session")
def petersen_matrix(petersen):
    return all_pairs_distances(petersen)


@pytest.fixture(scope="session")
def o4():
    return generate_kneser(7, 3)


@pytest.fixture(scope="session")
def o4_matrix(o4):
    return all_pairs_distances(o4)


@pytest.fixture
def heavy_c5():
    return cycle_graph([100, 1, 1, 1, 1])


@pytest.fixture
def p3():
    return path_graph([1, 1])

