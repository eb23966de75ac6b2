from enum import Enum
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from domination_oracle import Decision, Partition3
from exact_pipeline import ExactReport
from graph_core import GRAPH_FORMATS, Graph, max_degree
from schoening_walk import RandomizedReport

# ==========================================
# 1. ENUMS
# ==========================================

class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class SolveMode(str, Enum):
    EXACT = "exact"
    RANDOMIZED = "randomized"


GENERATORS = ("gnp", "regular", "cycle", "planted")
BENCH_MODES = ("exact", "randomized", "both")

# ==========================================
# 2. RUN CONFIG (validated CLI flags)
# ==========================================

class RunConfig(BaseModel):
    """Every flag of every subcommand; validated before any computation starts."""
    subcommand: Literal["solve", "enum-mds", "encode", "sat", "oracle", "verify", "bases", "bench"]
    input_path: Optional[str] = Field(None, description="Graph file (or CNF file for 'sat')")
    graph_format: str = Field("auto", description="auto | dimacs | edgelist")
    mode: Optional[SolveMode] = None
    output: OutputFormat = OutputFormat.TEXT
    seed: int = Field(0, ge=0)
    confidence_lambda: Optional[float] = Field(None, gt=0)
    walk_length: Optional[int] = Field(None, ge=1)
    max_trials: Optional[int] = Field(None, ge=1)
    workers: int = Field(1, ge=1, le=256)
    oracle_limit: Optional[int] = Field(None, ge=1, le=24)
    mds_index: Optional[int] = Field(None, ge=0)
    timing: bool = True
    witness_path: Optional[str] = None

    # bases
    min_delta: int = Field(3, ge=1)
    max_delta: int = Field(8, ge=1)
    bases_n: Optional[int] = Field(None, ge=0)

    # bench
    generator: Optional[str] = None
    n_min: Optional[int] = Field(None, ge=1)
    n_max: Optional[int] = Field(None, ge=1)
    count: int = Field(1, ge=1)
    edge_prob: float = Field(0.3, gt=0, le=1)
    degree: int = Field(3, ge=1)
    bench_mode: str = "exact"
    out_path: Optional[str] = None

    @field_validator("graph_format")
    @classmethod
    def validate_graph_format(cls, v):
        if v not in GRAPH_FORMATS:
            raise ValueError(f"format must be one of {', '.join(GRAPH_FORMATS)}")
        return v

    @field_validator("generator")
    @classmethod
    def validate_generator(cls, v):
        if v is not None and v not in GENERATORS:
            raise ValueError(f"generator must be one of {', '.join(GENERATORS)}")
        return v

    @field_validator("bench_mode")
    @classmethod
    def validate_bench_mode(cls, v):
        if v not in BENCH_MODES:
            raise ValueError(f"bench mode must be one of {', '.join(BENCH_MODES)}")
        return v

    @model_validator(mode="after")
    def check_subcommand_requirements(self):
        needs_input = {"solve", "enum-mds", "encode", "sat", "oracle", "verify"}
        if self.subcommand in needs_input and not self.input_path:
            raise ValueError(f"'{self.subcommand}' needs an input file")
        if self.subcommand == "solve" and self.mode is None:
            raise ValueError("'solve' needs exactly one of --exact / --randomized")
        if self.subcommand != "solve" and self.mode is not None:
            raise ValueError("--exact / --randomized only apply to 'solve'")
        if self.mode is SolveMode.EXACT and any(
            v is not None for v in (self.walk_length, self.max_trials, self.confidence_lambda)
        ):
            raise ValueError("--walk-len / --max-trials / --lambda only apply to --randomized")
        if self.subcommand == "encode" and self.mds_index is None:
            raise ValueError("'encode' needs --index")
        if self.subcommand == "verify" and not self.witness_path:
            raise ValueError("'verify' needs a witness file")
        if self.subcommand == "bases" and self.min_delta > self.max_delta:
            raise ValueError("--min-delta must not exceed --max-delta")
        if self.subcommand == "bench":
            if self.generator is None or self.n_min is None or self.n_max is None:
                raise ValueError("'bench' needs --generator, --n-min and --n-max")
            if self.n_min > self.n_max:
                raise ValueError("--n-min must not exceed --n-max")
        return self

# ==========================================
# 3. REPORTS
# ==========================================

class SolveReportSchema(BaseModel):
    """
    JSON report of 'solve'. Witness = three 1-indexed vertex lists for parts
    0, 1, 2 (part 2 is the dominating set D in exact mode).
    """
    mode: SolveMode
    decision: Decision
    n: int
    m_edges: int
    max_degree: int
    witness: Optional[List[List[int]]] = None
    reason: Optional[str] = None

    # exact counters
    candidates_tried: Optional[int] = None
    sat_calls: Optional[int] = None
    dominating_set: Optional[List[int]] = None

    # randomized counters
    seed: Optional[int] = None
    trials_used: Optional[int] = None
    steps_used: Optional[int] = None
    walk_length: Optional[int] = None
    max_trials: Optional[int] = None

    wall_ms: Optional[float] = Field(None, ge=0)

    @classmethod
    def from_exact(cls, g: Graph, report: ExactReport, wall_ms: Optional[float] = None):
        return cls(
            mode=SolveMode.EXACT,
            decision=report.decision,
            n=g.n,
            m_edges=g.m_edges,
            max_degree=max_degree(g),
            witness=report.witness.to_one_indexed() if report.witness is not None else None,
            reason=report.reason,
            candidates_tried=report.candidates_tried,
            sat_calls=report.sat_calls,
            dominating_set=report.dominating_set.to_one_indexed() if report.dominating_set is not None else None,
            wall_ms=wall_ms,
        )

    @classmethod
    def from_randomized(cls, g: Graph, report: RandomizedReport, wall_ms: Optional[float] = None):
        return cls(
            mode=SolveMode.RANDOMIZED,
            decision=report.decision,
            n=g.n,
            m_edges=g.m_edges,
            max_degree=max_degree(g),
            witness=report.witness.to_one_indexed() if report.witness is not None else None,
            reason=report.reason,
            seed=report.seed,
            trials_used=report.trials_used,
            steps_used=report.steps_used,
            walk_length=report.walk_length,
            max_trials=report.max_trials,
            wall_ms=wall_ms,
        )

    def witness_partition(self) -> Optional[Partition3]:
        if self.witness is None:
            return None
        return Partition3.from_one_indexed(self.n, self.witness)

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)


class EnumerationListing(BaseModel):
    sets: List[List[int]]
    count: int
    nodes_visited: int
    max_depth: int


class OracleReport(BaseModel):
    n: int
    domatic_number: int
    witness: Optional[List[List[int]]] = None


class SatReport(BaseModel):
    status: str
    # DIMACS-signed literals, one per variable
    model: Optional[List[int]] = None
    decisions: int
    propagations: int
    conflicts: int


class BaseRow(BaseModel):
    delta: int
    base: float
    previous_randomized: Optional[float] = None
    previous_deterministic: Optional[float] = None
    trials: Optional[int] = None

# ==========================================
# 4. BENCH RECORD
# ==========================================

BENCH_COLUMNS = ["id", "n", "m", "delta_max", "mode", "decision", "mds_count", "sat_calls", "trials", "wall_ms"]


class BenchRecord(BaseModel):
    """One (instance, mode) run of the benchmark harness."""
    id: str
    n: int = Field(..., ge=0)
    m: int = Field(..., ge=0)
    delta_max: int = Field(..., ge=0)
    mode: SolveMode
    decision: Decision
    mds_count: Optional[int] = None
    sat_calls: Optional[int] = None
    trials: Optional[int] = None
    wall_ms: float = Field(..., ge=0)
