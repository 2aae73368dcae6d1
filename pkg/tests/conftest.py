import os
import sys

import hypothesis
import pytest

from l21grids import lattice as L

sys.path.insert(0, os.path.dirname(__file__))

hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture
def c4():
    return L.square_rect(2, 2)


@pytest.fixture
def k3():
    return L.tri_triangle()


@pytest.fixture
def wheel():
    return L.tri_wheel()


SMALL_PATCHES = {
    "K3": L.tri_triangle,
    "C4": lambda: L.square_rect(2, 2),
    "P4": lambda: L.path_graph(4),
    "triDiamond": L.tri_diamond,
}


def pytest_configure(config):
    config.acceptance_results = []


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "acceptance_results", [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, title, detail in sorted(results):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title} ({detail})")
