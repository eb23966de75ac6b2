import pytest

from domination_oracle import brute_force_minimal_dominating_sets, is_minimal_dominating
from graph_core import Graph, VertexSet
from mds_enum import (
    MDS_COUNT_BASE,
    EnumerationStats,
    count_minimal_dominating_sets,
    enumerate_minimal_dominating_sets,
    iter_minimal_dominating_sets,
    mds_count_bound,
)
from tests.conftest import C4, C6, EMPTY, K2, K3, P3, atlas_graphs


def listed(g):
    found = []
    stats = enumerate_minimal_dominating_sets(g, found.append)
    return found, stats


def test_enumeration_examples():
    found, stats = listed(K3)
    assert sorted(d.members() for d in found) == [(0,), (1,), (2,)]
    assert stats.count == 3

    found, stats = listed(P3)
    assert {d.members() for d in found} == {(1,), (0, 2)}
    assert stats.count == 2

    assert listed(C4)[1].count == 6


def test_count_examples():
    assert count_minimal_dominating_sets(K3) == 3
    assert count_minimal_dominating_sets(C4) == 6
    assert count_minimal_dominating_sets(K2) == 2


def test_stats_are_filled():
    stats = EnumerationStats()
    sets = list(iter_minimal_dominating_sets(C6, stats))
    assert stats.count == len(sets) > 0
    assert stats.nodes_visited >= stats.count
    assert stats.max_depth == C6.n


def test_empty_graph_has_the_empty_set():
    assert list(iter_minimal_dominating_sets(EMPTY)) == [VertexSet.empty(0)]


def test_emission_order_is_deterministic():
    first = [d.mask for d in iter_minimal_dominating_sets(C6)]
    second = [d.mask for d in iter_minimal_dominating_sets(C6)]
    assert first == second


def test_large_star_does_not_hit_the_recursion_limit():
    n = 1500
    star = Graph.from_edges(n, [(0, v) for v in range(1, n)])
    stats = EnumerationStats()
    found = [d.members() for d in iter_minimal_dominating_sets(star, stats)]
    assert found == [(0,), tuple(range(1, n))]
    assert stats.max_depth == n



def test_atlas_equivalence_and_minimality():
    for g in atlas_graphs(max_n=6, connected=False):
        found = list(iter_minimal_dominating_sets(g))
        assert all(is_minimal_dominating(g, d) for d in found)
        assert len({d.mask for d in found}) == len(found)
        assert sorted(found, key=lambda s: s.canonical_key) == brute_force_minimal_dominating_sets(g)


@pytest.mark.slow
def test_random_equivalence_with_oracle(random_graphs):
    graphs = random_graphs(200, 4, 14, seed=2024, p=0.3)
    for g in graphs:
        found = sorted(iter_minimal_dominating_sets(g), key=lambda s: s.canonical_key)
        assert found == brute_force_minimal_dominating_sets(g), g
        assert len(found) <= mds_count_bound(g.n)


def test_count_bound_on_small_corpus(random_graphs):
    for g in list(atlas_graphs(max_n=6)) + random_graphs(50, 7, 12, seed=9):
        assert count_minimal_dominating_sets(g) <= MDS_COUNT_BASE ** g.n
