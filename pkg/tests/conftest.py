import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

from quivermoduli.quiver import Quiver, standard_quiver


@pytest.fixture
def K1():
    return standard_quiver("kronecker", 1)


@pytest.fixture
def L2():
    return standard_quiver("loop", 2)


def cyclic3() -> Quiver:
    return Quiver(("a", "b", "c"), (("a", "b"), ("b", "c"), ("c", "a")))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
