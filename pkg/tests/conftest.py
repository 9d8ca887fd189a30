import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from digraph_brown.digraph import Digraph  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def digraphs(draw, min_vertices=0, max_vertices=5, prefix="v"):
    n = draw(st.integers(min_vertices, max_vertices))
    vs = [f"{prefix}{i}" for i in range(n)]
    pairs = [(u, v) for u in vs for v in vs if u != v]
    es = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    return Digraph(tuple(vs), frozenset(es))


@st.composite
def matrices(draw, max_rows=5, max_cols=5, lo=-9, hi=9):
    m = draw(st.integers(0, max_rows))
    n = draw(st.integers(0, max_cols))
    return [[draw(st.integers(lo, hi)) for _ in range(n)] for _ in range(m)], m, n


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
