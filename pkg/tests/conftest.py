import sys

import pytest

from irpoly.census import build_census
from irpoly.fixtures import pseudo_rhombicuboctahedron, rhombicuboctahedron


@pytest.fixture(scope="session")
def census16():
    return build_census(16)


@pytest.fixture(scope="session")
def census17():
    return build_census(17)


@pytest.fixture(scope="session")
def itr_pair():
    return rhombicuboctahedron(), pseudo_rhombicuboctahedron()



def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
