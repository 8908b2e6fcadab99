from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from stpps.core import GroundSet, make_graph_cut
from stpps.instances import bundled

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def triangle():
    g = GroundSet.from_labels(["a", "b", "c"])
    return make_graph_cut(g, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


@pytest.fixture
def path():
    return bundled("path").oracle


@pytest.fixture
def crossing():
    return bundled("crossing").oracle


def F(x) -> Fraction:
    return Fraction(x)
