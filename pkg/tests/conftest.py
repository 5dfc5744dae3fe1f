import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from plismetric.bodies import Polytope, random_polygon

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)
angles = st.floats(min_value=0.0, max_value=2 * np.pi, allow_nan=False)
coords = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)
vectors2 = st.tuples(coords, coords).map(np.array)


@st.composite
def polygons(draw, n_points=st.integers(min_value=1, max_value=14)):
    return random_polygon(draw(seeds), draw(n_points))


@pytest.fixture
def square():
    return Polytope([[1, 1], [-1, 1], [-1, -1], [1, -1]])


@pytest.fixture
def triangle():
    return Polytope([[0, 0], [1, 0], [0, 1]])


def direction(theta):
    return np.array([np.cos(theta), np.sin(theta)])


ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def record(request):
    """Store one acceptance line: record(number, passed, detail)."""
    store = request.config.stash.setdefault(ACCEPTANCE, {})

    def _record(number, passed, detail):
        store[number] = (bool(passed), detail)
        return passed

    return _record


def pytest_terminal_summary(terminalreporter, config):
    store = config.stash.get(ACCEPTANCE, None)
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for number in range(1, 11):
        if number in store:
            passed, detail = store[number]
            terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
        else:
            terminalreporter.write_line(f"criterion {number:2d}: NOT RUN / ERROR")
