import os
import sys
from functools import lru_cache

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oracle import MatrixGroup  # noqa: E402

from coxclosure.matrix import preset  # noqa: E402
from coxclosure.system import system_for  # noqa: E402


@lru_cache(maxsize=None)
def oracle_for(name):
    return MatrixGroup(preset(name).bonds)


class Bridge:
    """Translate between oracle indices and package elements via words."""

    def __init__(self, name):
        self.W = system_for(name)
        self.G = oracle_for(name)
        self.elements = [self.W.element(w) for w in self.G.words]
        self.root_of = {t: self.W.reflection_from_element(self.elements[t]).root_id for t in self.G.refl}
        self.refl_of = {r: t for t, r in self.root_of.items()}

    def roots(self, ts):
        return frozenset(self.root_of[t] for t in ts)

    def refls(self, rs):
        return frozenset(self.refl_of[r] for r in rs)


@lru_cache(maxsize=None)
def bridge(name):
    return Bridge(name)


@pytest.fixture
def A3():
    return system_for("A3")


@pytest.fixture
def H3():
    return system_for("H3")


ACCEPTANCE_LINES = []


@pytest.fixture
def record():
    """Record one PASS/FAIL line for an acceptance criterion."""
    def _record(number, title, ok, elapsed, limit, note=""):
        status = "PASS" if ok and elapsed <= limit else "FAIL"
        line = f"{status} criterion {number}: {title} [{elapsed:.2f}s, limit {limit:g}s]"
        if note:
            line += f" {note}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return status == "PASS"
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
