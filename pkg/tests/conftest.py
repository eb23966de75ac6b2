"""Shared graphs and factories for the test suites."""

import networkx as nx
import pytest

from config import get_settings
from graph_core import Graph
from helpers.corpus_generators import gnp_no_isolated, instance_seeds


def make(n, edges):
    """Graph from 0-indexed edges."""
    return Graph.from_edges(n, edges)


P3 = make(3, [(0, 1), (1, 2)])
K2 = make(2, [(0, 1)])
K3 = make(3, [(0, 1), (1, 2), (0, 2)])
K4 = make(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
STAR = make(4, [(0, 1), (0, 2), (0, 3)])
C4 = Graph.from_networkx(nx.cycle_graph(4))
C6 = Graph.from_networkx(nx.cycle_graph(6))
EMPTY = Graph(0, ())


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    for var in ("DOMATIC_ORACLE_SUBSET_LIMIT", "DOMATIC_ORACLE_PARTITION_LIMIT", "DOMATIC_DEFAULT_LAMBDA",
                "DOMATIC_TRIAL_CAP", "DOMATIC_WORKERS", "DOMATIC_LOG_LEVEL", "DOMATIC_LOG_DIR"):
        monkeypatch.delenv(var, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def random_graphs():
    """``random_graphs(count, n_min, n_max, seed)`` -> seeded G(n, p) graphs without isolated vertices."""

    def factory(count, n_min, n_max, seed=0, p=0.4):
        graphs = []
        for i, s in enumerate(instance_seeds(seed, count)):
            n = n_min + i % (n_max - n_min + 1)
            graphs.append(gnp_no_isolated(n, p, s))
        return graphs

    return factory


def atlas_graphs(max_n=6, connected=True):
    """Every graph of networkx's atlas (all graphs up to 7 vertices) with 1..max_n vertices."""
    for nx_graph in nx.graph_atlas_g():
        n = nx_graph.number_of_nodes()
        if not 1 <= n <= max_n:
            continue
        if connected and not nx.is_connected(nx_graph):
            continue
        yield Graph.from_networkx(nx_graph)
