import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ffkit.graph import Multigraph

settings.register_profile(
    "ffkit", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("ffkit")


@st.composite
def multigraphs(draw, n_min=1, n_max=6, m_max=12, loops=True, connected=False):
    n = draw(st.integers(n_min, n_max))
    vertex = st.integers(0, n - 1)
    edge = st.tuples(vertex, vertex).map(lambda e: (min(e), max(e)))
    if not loops:
        edge = edge.filter(lambda e: e[0] != e[1]) if n > 1 else st.nothing()
    edges = draw(st.lists(edge, max_size=m_max)) if n > 1 or loops else []
    if connected:
        # a path keeps the graph connected, extra edges on top
        edges = [(i, i + 1) for i in range(n - 1)] + edges
    return Multigraph(n, tuple(edges))


def graph(n, *edges):
    return Multigraph(n, tuple(edges))


@pytest.fixture
def k4():
    from ffkit.harness.generators import complete

    return complete(4)


@pytest.fixture
def k5():
    from ffkit.harness.generators import complete

    return complete(5)


# one line per acceptance criterion, filled by test_acceptance and echoed at the end
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
