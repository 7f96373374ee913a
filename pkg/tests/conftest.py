import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from widthdual.core import elements, make_family
from widthdual.engine import parse_graph


def F(*blocks):
    """Family from element lists: F([0, 1], [2])."""
    return make_family(blocks)


def as_sets(fam):
    return frozenset(frozenset(elements(b)) for b in fam)


def atlas_graphs(max_edges=None, max_vertices=None, connected=True, min_ground=2):
    """Graphs up to isomorphism from the networkx atlas, as package Graphs."""
    import networkx as nx

    from widthdual.functions import Graph

    out = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == 0:
            continue
        if max_vertices is not None and h.number_of_nodes() > max_vertices:
            continue
        if max_edges is not None and h.number_of_edges() > max_edges:
            continue
        if connected and not nx.is_connected(h):
            continue
        out.append(Graph(h.number_of_nodes(), tuple(sorted(h.edges()))))
    return out


GOLDEN_GRAPHS = {
    "K3": "0 1\n1 2\n2 0\n",
    "K4": "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n",
    "C4": "0 1\n1 2\n2 3\n3 0\n",
    "P4": "0 1\n1 2\n2 3\n",
}


@pytest.fixture
def graphs():
    return {name: parse_graph(text) for name, text in GOLDEN_GRAPHS.items()}


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
