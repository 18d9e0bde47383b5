import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fractalham.constructions import (  # noqa: E402
    build_carpet_2ham, build_triangle_3ham, build_triangle_6ham,
)
from fractalham.engine import ExplorationConfig, explore  # noqa: E402


@pytest.fixture(scope="session")
def tri6():
    return build_triangle_6ham()


@pytest.fixture(scope="session")
def tri3():
    return build_triangle_3ham()


@pytest.fixture(scope="session")
def carpet():
    return build_carpet_2ham()


@pytest.fixture(scope="session")
def tri6_report_102(tri6):
    return explore(tri6.system, ExplorationConfig(max_size=102))


@pytest.fixture(scope="session")
def tri6_report_318(tri6):
    return explore(tri6.system, ExplorationConfig(max_size=318))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", help="also run tests marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow; run with --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
