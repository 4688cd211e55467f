import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("repo", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

from cubemedian.presentations import DefiningGraph, cycle_graph, racg  # noqa: E402


@pytest.fixture(scope="session")
def pentagon_graph():
    return cycle_graph("abcde")


@pytest.fixture(scope="session")
def pentagon(pentagon_graph):
    return racg(pentagon_graph)


@pytest.fixture(scope="session")
def hexagon_graph():
    return cycle_graph([f"x{i}" for i in range(1, 7)])


GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def check_golden(name: str, text: str):
    """Compare text with tests/golden/<name>; CUBEMEDIAN_UPDATE_GOLDEN=1 rewrites it."""
    path = os.path.join(GOLDEN, name)
    if os.environ.get("CUBEMEDIAN_UPDATE_GOLDEN") == "1":
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        return True
    if not os.path.exists(path):
        return False
    with open(path, encoding="utf-8") as fh:
        return fh.read() == text


@pytest.fixture
def golden():
    return check_golden


@pytest.fixture
def repo_root(monkeypatch):
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    monkeypatch.chdir(root)
    return root


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
