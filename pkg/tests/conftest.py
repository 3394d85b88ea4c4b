import os
import sys

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from triweb.fixtures import resolve_presentation  # noqa: E402
from triweb.webfun import make_context  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: relation suites on the q = 7 plane")


@pytest.fixture(scope="session")
def tp_15_1():
    return resolve_presentation("builtin:15.1")


@pytest.fixture(scope="session")
def ctx_15_1(tp_15_1):
    return make_context(tp_15_1, 2)


@pytest.fixture(scope="session")
def tp_fano():
    return resolve_presentation("fano")


@pytest.fixture(scope="session")
def tp_q4():
    return resolve_presentation("diffset:21:4:0,1,4,14,16")


@pytest.fixture(scope="session")
def ctx_q4(tp_q4):
    return make_context(tp_q4, 3)


@pytest.fixture(scope="session")
def tp_degenerate_4():
    return resolve_presentation("degenerate:4")


@pytest.fixture(scope="session")
def ctx_degenerate_4(tp_degenerate_4):
    return make_context(tp_degenerate_4, 0)
