import random

import pytest
from hypothesis import HealthCheck, settings

from lierinehart.cochain import coordinate_form
from lierinehart.lralg import make_standard_algebra

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


BUILTINS = [("torus", 1), ("torus", 2), ("torus", 3), ("affine", 1), ("affine", 2),
            ("point-abelian", 2), ("point-abelian", 3)]


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def torus2():
    return make_standard_algebra("torus", 2)


@pytest.fixture
def f_tor(torus2):
    """The generator of the window H^2 of the 2-torus: theta_1 ^ theta_2 -> 1."""
    return coordinate_form(torus2, (0, 1))


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.RESULTS, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
