import itertools

from hypothesis import HealthCheck, settings, strategies as st

from rigidlink.graph import Graph

settings.register_profile("default", deadline=None, derandomize=True, max_examples=150,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, chosen) if keep])


@st.composite
def labelled_graphs(draw, max_n=8):
    G = draw(graphs(max_n=max_n))
    names = draw(st.lists(st.text("abcdefghxyz_-", min_size=1, max_size=4), min_size=G.n, max_size=G.n,
                          unique=True))
    return Graph(G.n, G.edges, dict(enumerate(names)))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.report_lines():
        terminalreporter.write_line(line)
