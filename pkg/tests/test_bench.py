import json

import pandas as pd
import pytest

from domination_oracle import Decision, Partition3, verify_partition
from errors import UsageError
from graph_core import isolated_vertices, max_degree
from helpers.bench import records_frame, run_bench, run_instance, write_records
from helpers.corpus_generators import (
    cycle,
    generate_corpus,
    gnp_no_isolated,
    planted_partition,
    random_regular,
)
from models import BENCH_COLUMNS, RunConfig, SolveMode
from tests.conftest import C6


# ==========================================
# CORPUS GENERATORS
# ==========================================

def test_corpus_is_deterministic():
    first = generate_corpus("gnp", 5, 9, count=3, seed=42)
    second = generate_corpus("gnp", 5, 9, count=3, seed=42)
    assert first == second
    assert [iid for iid, _ in first][:3] == ["gnp-n5-0", "gnp-n5-1", "gnp-n5-2"]
    assert generate_corpus("gnp", 5, 9, count=3, seed=43) != first


def test_gnp_has_no_isolated_vertices():
    for s in range(20):
        assert len(isolated_vertices(gnp_no_isolated(8, 0.2, s))) == 0


def test_random_regular_degrees():
    g = random_regular(10, 3, seed=1)
    assert all(g.degree(v) == 3 for v in range(10))
    odd = random_regular(7, 3, seed=1)
    assert all(odd.degree(v) == 2 for v in range(7))


def test_cycle_needs_three_vertices():
    assert cycle(6) == C6
    with pytest.raises(UsageError):
        cycle(2)


@pytest.mark.parametrize("seed", range(10))
def test_planted_partition_is_a_witness(seed):
    g, parts = planted_partition(14, seed=seed, p=0.1, degree_cap=4)
    assert max_degree(g) <= 4
    assert sorted(len(p) for p in parts) == [4, 5, 5]
    assert verify_partition(g, Partition3.from_parts(g.n, parts))


def test_unknown_generator():
    with pytest.raises(UsageError):
        generate_corpus("grid", 3, 4)


# ==========================================
# BENCH
# ==========================================

def test_run_instance_counts():
    record = run_instance("c6", C6, SolveMode.EXACT)
    assert record.decision is Decision.YES
    assert record.mds_count > 0
    assert record.sat_calls >= 1
    assert record.trials is None
    walk = run_instance("c6", C6, SolveMode.RANDOMIZED, seed=1)
    assert walk.trials >= 1
    assert walk.sat_calls is None


def test_bench_both_modes_on_planted():
    cfg = RunConfig(
        subcommand="bench", generator="planted", n_min=6, n_max=9, count=2, edge_prob=0.1, degree=4, bench_mode="both"
    )
    records = run_bench(cfg)
    assert len(records) == 4 * 2 * 2
    assert all(r.decision is Decision.YES for r in records)
    assert {r.mode for r in records} == {SolveMode.EXACT, SolveMode.RANDOMIZED}
    assert all(r.mds_count <= 1.7697 ** r.n for r in records)


def test_records_frame_columns_and_blanks():
    frame = records_frame([run_instance("c6", C6, SolveMode.EXACT)])
    assert list(frame.columns) == BENCH_COLUMNS
    assert pd.isna(frame.loc[0, "trials"])
    assert frame.loc[0, "sat_calls"] >= 1


def test_write_records_formats(tmp_path):
    records = [run_instance("c6", C6, SolveMode.EXACT), run_instance("c6", C6, SolveMode.RANDOMIZED)]

    jsonl = tmp_path / "out.jsonl"
    write_records(records, str(jsonl))
    rows = [json.loads(line) for line in jsonl.read_text().splitlines()]
    assert [r["mode"] for r in rows] == ["exact", "randomized"]

    xlsx = tmp_path / "out.xlsx"
    write_records(records, str(xlsx))
    assert list(pd.read_excel(xlsx, engine="openpyxl").columns) == BENCH_COLUMNS

    csv = tmp_path / "out.csv"
    write_records(records, str(csv))
    assert pd.read_csv(csv)["decision"].tolist() == ["yes", "yes"]
