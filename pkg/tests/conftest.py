import random
import sys
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import strategies as st

from powerdom.graph import Graph
from powerdom.families import random_graph


def to_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges())
    return out


def from_nx(h: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(h.nodes())}
    return Graph(len(idx), [(idx[u], idx[v]) for u, v in h.edges()])


def brute_minimum(g: Graph, pred) -> int:
    """Smallest k such that some k-subset satisfies ``pred`` (independent of solve)."""
    for k in range(g.n + 1):
        if any(pred(g, s) for s in combinations(range(g.n), k)):
            return k
    raise AssertionError("V(G) should always qualify")


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_corpus(seed: int, count: int, n_lo=1, n_hi=9, connected=False):
    r = random.Random(seed)
    for _ in range(count):
        yield random_graph(r.randint(n_lo, n_hi), r.random(), r, connected=connected)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
