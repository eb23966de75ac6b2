import networkx as nx
import pytest

from domination_oracle import Decision, brute_force_domatic_at_least, verify_partition
from errors import PipelineInvariantError
from exact_pipeline import check_candidate, decode_partition, solve_exact
from graph_core import Graph, VertexSet
from mds_enum import count_minimal_dominating_sets, iter_minimal_dominating_sets
from models import SolveReportSchema
from nae_sat_encoding import build_nae_formula
from tests.conftest import C6, EMPTY, K3, K4, P3, atlas_graphs


def test_k4_is_yes_with_certified_witness():
    report = solve_exact(K4)
    assert report.decision is Decision.YES
    assert verify_partition(K4, report.witness)
    assert report.witness.parts[2] == report.dominating_set


def test_p3_is_no_after_all_candidates():
    report = solve_exact(P3)
    assert report.decision is Decision.NO
    assert report.witness is None
    assert report.candidates_tried == report.sat_calls == 2


def test_c6_splits_into_opposite_pairs():
    report = solve_exact(C6)
    assert report.decision is Decision.YES
    assert sorted(len(p) for p in report.witness.parts) == [2, 2, 2]


def test_isolated_vertex_short_circuit():
    g = Graph.from_edges(4, [(0, 1), (1, 2)])
    report = solve_exact(g)
    assert report.decision is Decision.NO
    assert report.candidates_tried == 0
    assert "isolated vertex 4" in report.reason


def test_empty_graph_is_a_yes_instance():
    report = solve_exact(EMPTY)
    assert report.decision is Decision.YES
    assert report.witness.to_one_indexed() == [[], [], []]


def test_decode_examples():
    d = VertexSet.from_iterable(3, [0])
    f = build_nae_formula(K3, d)
    p = decode_partition(K3, d, f, (True, False))
    assert p.to_one_indexed() == [[3], [2], [1]]
    swapped = decode_partition(K3, d, f, (False, True))
    assert swapped.parts[0] == p.parts[1] and swapped.parts[1] == p.parts[0]

    d4 = VertexSet.from_iterable(4, [0])
    p4 = decode_partition(K4, d4, build_nae_formula(K4, d4), (True, False, False))
    assert [part.members() for part in p4.parts] == [(2, 3), (1,), (0,)]


def test_decode_rejects_non_nae_model():
    d = VertexSet.from_iterable(3, [0])
    with pytest.raises(PipelineInvariantError):
        decode_partition(K3, d, build_nae_formula(K3, d), (True, True))


def test_atlas_equivalence_with_oracle():
    checked = 0
    for g in atlas_graphs(max_n=6, connected=False):
        report = solve_exact(g)
        expected = brute_force_domatic_at_least(g, 3) is not None
        assert (report.decision is Decision.YES) == expected, g
        if report.witness is not None:
            assert verify_partition(g, report.witness)
        checked += 1
    assert checked > 200


@pytest.mark.slow
def test_random_equivalence_with_oracle(random_graphs):
    for g in random_graphs(300, 7, 12, seed=300, p=0.45):
        report = solve_exact(g)
        expected = brute_force_domatic_at_least(g, 3) is not None
        assert (report.decision is Decision.YES) == expected, g
        if expected:
            assert verify_partition(g, report.witness)
        else:
            assert report.candidates_tried == count_minimal_dominating_sets(g)


def test_some_minimal_set_suffices_on_yes_instances():
    for g in atlas_graphs(max_n=6):
        if brute_force_domatic_at_least(g, 3) is None:
            continue
        assert any(check_candidate(g, d) is not None for d in iter_minimal_dominating_sets(g))


def test_exact_json_report_is_reproducible():
    g = Graph.from_networkx(nx.circulant_graph(9, [1, 2]))
    first = SolveReportSchema.from_exact(g, solve_exact(g)).to_json()
    second = SolveReportSchema.from_exact(g, solve_exact(g)).to_json()
    assert first == second
    assert '"decision":"yes"' in first


def test_pooled_run_agrees_on_decision():
    for g in (K4, P3, C6):
        pooled = solve_exact(g, workers=2)
        assert pooled.decision is solve_exact(g).decision
        if pooled.witness is not None:
            assert verify_partition(g, pooled.witness)
