import pytest
from hypothesis import strategies as st

from mmdc.instance import ProblemInstance

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def instances(draw, max_s=3, max_t=3, cost_lo=-9, cost_hi=9):
    """Valid instances; feasibility is not guaranteed."""
    s = draw(st.integers(1, max_s))
    t = draw(st.integers(1, max_t))
    cost = draw(st.lists(st.lists(st.integers(cost_lo, cost_hi), min_size=t, max_size=t), min_size=s, max_size=s))

    def bounds(limit):
        lo = draw(st.integers(0, limit))
        hi = draw(st.integers(lo, limit))
        return lo, hi

    a = [bounds(t) for _ in range(s)]
    b = [bounds(s) for _ in range(t)]
    return ProblemInstance.create(cost, [x for x, _ in a], [y for _, y in a], [x for x, _ in b], [y for _, y in b])


@pytest.fixture
def minimal():
    return ProblemInstance.create([[5]], [1], [1], [1], [1])
