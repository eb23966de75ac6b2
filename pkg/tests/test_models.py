import pytest
from pydantic import ValidationError

from domination_oracle import Decision
from exact_pipeline import solve_exact
from models import BenchRecord, RunConfig, SolveMode, SolveReportSchema
from schoening_walk import WalkConfig, solve_randomized
from tests.conftest import C6, K4, P3


def test_solve_needs_a_mode():
    with pytest.raises(ValidationError, match="--exact"):
        RunConfig(subcommand="solve", input_path="g.txt")


def test_exact_mode_rejects_walk_flags():
    with pytest.raises(ValidationError, match="--randomized"):
        RunConfig(subcommand="solve", input_path="g.txt", mode="exact", max_trials=10)


def test_encode_needs_index_and_bench_needs_corpus():
    with pytest.raises(ValidationError):
        RunConfig(subcommand="encode", input_path="g.txt")
    with pytest.raises(ValidationError, match="--n-min"):
        RunConfig(subcommand="bench", generator="cycle", n_min=9, n_max=3)
    with pytest.raises(ValidationError, match="generator"):
        RunConfig(subcommand="bench", generator="grid", n_min=3, n_max=4)


def test_negative_seed_rejected():
    with pytest.raises(ValidationError):
        RunConfig(subcommand="solve", input_path="g.txt", mode="randomized", seed=-1)


def test_exact_report_json_roundtrip():
    schema = SolveReportSchema.from_exact(K4, solve_exact(K4), wall_ms=1.5)
    restored = SolveReportSchema.model_validate_json(schema.to_json())
    assert restored == schema
    assert restored.witness_partition().to_one_indexed() == schema.witness


def test_randomized_report_json_roundtrip():
    schema = SolveReportSchema.from_randomized(C6, solve_randomized(C6, WalkConfig(seed=3)))
    restored = SolveReportSchema.model_validate_json(schema.to_json())
    assert restored == schema
    assert restored.seed == 3
    assert "wall_ms" not in schema.to_json()


def test_no_report_has_no_witness():
    schema = SolveReportSchema.from_exact(P3, solve_exact(P3))
    assert schema.decision is Decision.NO
    assert schema.witness_partition() is None
    assert '"witness"' not in schema.to_json()


def test_bench_record_rejects_negative_time():
    with pytest.raises(ValidationError):
        BenchRecord(id="x", n=3, m=2, delta_max=2, mode=SolveMode.EXACT, decision=Decision.NO, wall_ms=-1)
