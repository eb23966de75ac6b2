"""
Domatic-3 - Three-Domatic-Number Solver Suite
================================================================================

SYSTEM ARCHITECTURE:
--------------------
1.  Exact path          : minimal dominating sets -> NAE-SAT -> CNF -> DPLL
2.  Randomized path     : CSP over {0, 1, 2} + random-restart local search
3.  Oracles             : exhaustive domination / domatic-number checks (small n)
4.  Harness             : argparse CLI, seeded corpora, benchmark export

MODULES OVERVIEW:
-----------------
[A] System Config       : Logging, Settings (.env)
[B] Input Helpers       : Graph / CNF / witness file loading
[C] Subcommands         : solve, enum-mds, encode, sat, oracle, verify, bases, bench
[D] Argument Parsing    : argparse -> validated RunConfig
[E] Entry Point         : error interception, exit codes

EXIT CODES:
-----------
0 = yes / satisfiable / certified, 1 = no / probably-no / not certified, 2 = error
================================================================================
"""

import argparse
import json
import logging
import os
import sys
import time
from typing import List, Optional, Sequence

from pydantic import ValidationError

from config import Settings, get_settings
from domination_oracle import (
    NUM_PARTS,
    Partition3,
    brute_force_domatic_at_least,
    brute_force_domatic_number,
    verify_partition,
)
from errors import DomaticError, MalformedPartitionError, UsageError
from exact_pipeline import solve_exact
from graph_core import Graph, isolated_vertices, parse_graph
from helpers.bench import run_bench, write_records
from mds_enum import EnumerationStats, iter_minimal_dominating_sets
from models import (
    BaseRow,
    EnumerationListing,
    OracleReport,
    OutputFormat,
    RunConfig,
    SatReport,
    SolveMode,
    SolveReportSchema,
)
from nae_sat_encoding import build_nae_formula, export_dimacs_cnf, nae_to_sat, parse_dimacs_cnf
from sat_engine import solve_sat
from schoening_walk import WalkConfig, budget_for, solve_randomized, walk_base

# ==============================================================================
# [SECTION 1] SYSTEM CONFIGURATION & LOGGING
# ==============================================================================

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s::%(funcName)s - %(message)s"
LOG_FILE_NAME = "domatic.log"

logger = logging.getLogger("Domatic.CLI")

# Earlier bounded-degree bases for 3 <= Δ <= 8, printed next to the computed one
PREVIOUS_RANDOMIZED_BASES = {3: 2.0, 4: 2.3570, 5: 2.5820, 6: 2.7262, 7: 2.8197, 8: 2.8808}
PREVIOUS_DETERMINISTIC_BASES = {3: 2.2894, 4: 2.6591, 5: 2.8252, 6: 2.9058, 7: 2.9473, 8: 2.9697}


def setup_logging(settings: Settings, level: Optional[str] = None):
    """Logs go to stderr (stdout is reserved for reports) and optionally to a file."""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.log_dir:
        try:
            os.makedirs(settings.log_dir, exist_ok=True)
            handlers.append(
                logging.FileHandler(os.path.join(settings.log_dir, LOG_FILE_NAME), mode="a", encoding="utf-8")
            )
        except OSError as e:
            print(f"FileSystem: cannot use log directory {settings.log_dir}: {e}", file=sys.stderr)
    logging.basicConfig(level=(level or settings.log_level).upper(), format=LOG_FORMAT, handlers=handlers, force=True)

# ==============================================================================
# [SECTION 2] INPUT HELPERS
# ==============================================================================

def read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except (OSError, UnicodeDecodeError) as e:
        raise UsageError(f"cannot read {path}: {e}") from e


def load_graph(cfg: RunConfig) -> Graph:
    g = parse_graph(read_text(cfg.input_path), cfg.graph_format)
    logger.info(f"Input: {cfg.input_path} -> n={g.n}, m={g.m_edges}")
    return g


def load_witness(path: str, n: int) -> Partition3:
    """
    Witness file: a JSON solve report / ``{"witness": [[...], [...], [...]]}``,
    or three text lines of 1-indexed vertex ids. A blank line is an empty part;
    missing trailing lines count as empty parts.
    """
    text = read_text(path)
    if text.lstrip().startswith("{"):
        try:
            parts = json.loads(text).get("witness")
        except json.JSONDecodeError as e:
            raise MalformedPartitionError(f"witness JSON is invalid: {e}") from e
        if parts is None:
            raise MalformedPartitionError("witness JSON has no 'witness' field")
    else:
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        lines += [""] * (NUM_PARTS - len(lines))
        try:
            parts = [[int(tok) for tok in line.split()] for line in lines]
        except ValueError as e:
            raise MalformedPartitionError(f"witness lines must hold vertex ids: {e}") from e
    return Partition3.from_one_indexed(n, parts)


def emit(text: str):
    print(text, file=sys.stdout)


def format_parts(parts: Sequence[Sequence[int]]) -> List[str]:
    return [f"part{i}: {' '.join(map(str, part))}".rstrip() for i, part in enumerate(parts)]

# ==============================================================================
# [SECTION 3] SUBCOMMANDS
# ==============================================================================

def cmd_solve(cfg: RunConfig) -> int:
    """Exact (dominating sets -> NAE-SAT -> DPLL) or randomized (walk) decision for one graph."""
    g = load_graph(cfg)
    start = time.perf_counter()
    if cfg.mode is SolveMode.EXACT:
        report = solve_exact(g, workers=cfg.workers)
        wall_ms = (time.perf_counter() - start) * 1000.0
        schema = SolveReportSchema.from_exact(g, report, round(wall_ms, 3) if cfg.timing else None)
    else:
        walk_cfg = WalkConfig(
            seed=cfg.seed,
            walk_length=cfg.walk_length,
            max_trials=cfg.max_trials,
            confidence_lambda=cfg.confidence_lambda,
            workers=cfg.workers,
        )
        report = solve_randomized(g, walk_cfg)
        wall_ms = (time.perf_counter() - start) * 1000.0
        schema = SolveReportSchema.from_randomized(g, report, round(wall_ms, 3) if cfg.timing else None)

    if cfg.output is OutputFormat.JSON:
        emit(schema.to_json())
    else:
        emit(f"decision={schema.decision.value}")
        if schema.witness is not None:
            for line in format_parts(schema.witness):
                emit(line)
        if schema.reason:
            emit(f"reason={schema.reason}")
        if schema.mode is SolveMode.EXACT:
            emit(f"candidates_tried={schema.candidates_tried} sat_calls={schema.sat_calls}")
        else:
            emit(
                f"seed={schema.seed} trials_used={schema.trials_used} steps_used={schema.steps_used} "
                f"max_trials={schema.max_trials}"
            )
        if schema.wall_ms is not None:
            emit(f"wall_ms={schema.wall_ms}")
    return 0 if schema.decision.value == "yes" else 1


def canonical_mds(g: Graph):
    """Minimal dominating sets sorted by size, then members (the order used by ``encode --index``)."""
    stats = EnumerationStats()
    sets = sorted(iter_minimal_dominating_sets(g, stats), key=lambda d: d.canonical_key)
    return sets, stats


def cmd_enum_mds(cfg: RunConfig) -> int:
    g = load_graph(cfg)
    if len(isolated_vertices(g)):
        logger.warning("Enum: graph has isolated vertices; they appear in every listed set")
    sets, stats = canonical_mds(g)
    if cfg.output is OutputFormat.JSON:
        listing = EnumerationListing(
            sets=[d.to_one_indexed() for d in sets],
            count=stats.count,
            nodes_visited=stats.nodes_visited,
            max_depth=stats.max_depth,
        )
        emit(listing.model_dump_json())
    else:
        for d in sets:
            emit(" ".join(map(str, d.to_one_indexed())))
        emit(f"count={stats.count}")
    return 0


def cmd_encode(cfg: RunConfig) -> int:
    """DIMACS CNF of the reduced formula for the index-th minimal dominating set."""
    g = load_graph(cfg)
    sets, _ = canonical_mds(g)
    if cfg.mds_index >= len(sets):
        raise UsageError(f"--index {cfg.mds_index} out of range: graph has {len(sets)} minimal dominating sets")
    d = sets[cfg.mds_index]
    nae = build_nae_formula(g, d)
    cnf = nae_to_sat(nae)
    comments = [
        f"dominating_set={' '.join(map(str, d.to_one_indexed()))}",
        f"vertices={g.n} nae_clauses={cnf.pre_dedup_count}",
    ]
    comments += [f"var {i + 1} = vertex {vertex + 1}" for i, vertex in enumerate(nae.variables)]
    emit(export_dimacs_cnf(cnf, comments))
    return 0


def cmd_sat(cfg: RunConfig) -> int:
    cnf = parse_dimacs_cnf(read_text(cfg.input_path))
    result = solve_sat(cnf)
    literals = None
    if result.satisfiable:
        literals = [(i + 1) if value else -(i + 1) for i, value in enumerate(result.model)]
    if cfg.output is OutputFormat.JSON:
        emit(SatReport(
            status=result.status.value.upper(),
            model=literals,
            decisions=result.stats.decisions,
            propagations=result.stats.propagations,
            conflicts=result.stats.conflicts,
        ).model_dump_json())
    else:
        emit(f"s {result.status.value.upper()}")
        if literals is not None:
            emit("v " + " ".join(map(str, [*literals, 0])))
    return 0 if result.satisfiable else 1


def cmd_oracle(cfg: RunConfig) -> int:
    g = load_graph(cfg)
    delta = brute_force_domatic_number(g, limit=cfg.oracle_limit)
    parts = brute_force_domatic_at_least(g, 3, limit=cfg.oracle_limit) if delta >= 3 else None
    witness = [p.to_one_indexed() for p in parts] if parts else None
    if cfg.output is OutputFormat.JSON:
        emit(OracleReport(n=g.n, domatic_number=delta, witness=witness).model_dump_json(exclude_none=True))
    else:
        emit(f"delta={delta}")
        if witness:
            for line in format_parts(witness):
                emit(line)
    return 0 if delta >= 3 else 1


def cmd_verify(cfg: RunConfig) -> int:
    g = load_graph(cfg)
    partition = load_witness(cfg.witness_path, g.n)
    ok = verify_partition(g, partition)
    emit("certified" if ok else "not certified")
    return 0 if ok else 1


def cmd_bases(cfg: RunConfig) -> int:
    """Walk base per max degree (and the restart budget for ``--n``) next to earlier bounds."""
    rows = []
    for delta in range(cfg.min_delta, cfg.max_delta + 1):
        trials = None
        if cfg.bases_n is not None:
            trials = budget_for(delta, cfg.bases_n, cfg.confidence_lambda)
        rows.append(BaseRow(
            delta=delta,
            base=round(walk_base(delta), 4),
            previous_randomized=PREVIOUS_RANDOMIZED_BASES.get(delta),
            previous_deterministic=PREVIOUS_DETERMINISTIC_BASES.get(delta),
            trials=trials,
        ))
    if cfg.output is OutputFormat.JSON:
        emit(json.dumps([row.model_dump(exclude_none=True) for row in rows]))
    else:
        for row in rows:
            extra = f" trials={row.trials}" if row.trials is not None else ""
            prev = ""
            if row.previous_randomized is not None:
                prev = f" previous_randomized={row.previous_randomized} previous_deterministic={row.previous_deterministic}"
            emit(f"delta={row.delta} base={row.base:.4f}{prev}{extra}")
    return 0


def cmd_bench(cfg: RunConfig) -> int:
    records = run_bench(cfg)
    write_records(records, cfg.out_path)
    return 0


COMMANDS = {
    "solve": cmd_solve,
    "enum-mds": cmd_enum_mds,
    "encode": cmd_encode,
    "sat": cmd_sat,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "bases": cmd_bases,
    "bench": cmd_bench,
}

# ==============================================================================
# [SECTION 4] ARGUMENT PARSING
# ==============================================================================

def _add_graph_args(p: argparse.ArgumentParser):
    p.add_argument("input_path", metavar="GRAPH", help="graph file (DIMACS edge format or edge list)")
    p.add_argument("--format", dest="graph_format", default="auto", choices=["auto", "dimacs", "edgelist"])


def _add_output_arg(p: argparse.ArgumentParser):
    p.add_argument("--output", default="text", choices=["text", "json"], help="report format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="domatic",
        description="Decide whether a graph splits into three dominating sets.",
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("solve", help="decide 3-DNP exactly or by random walk")
    _add_graph_args(p)
    _add_output_arg(p)
    modes = p.add_mutually_exclusive_group(required=True)
    modes.add_argument("--exact", dest="mode", action="store_const", const="exact")
    modes.add_argument("--randomized", dest="mode", action="store_const", const="randomized")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lambda", dest="confidence_lambda", type=float, default=None)
    p.add_argument("--walk-len", dest="walk_length", type=int, default=None)
    p.add_argument("--max-trials", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--no-timing", dest="timing", action="store_false", help="omit wall_ms from the report")

    p = sub.add_parser("enum-mds", help="list all minimal dominating sets")
    _add_graph_args(p)
    _add_output_arg(p)

    p = sub.add_parser("encode", help="DIMACS CNF for one minimal dominating set")
    _add_graph_args(p)
    p.add_argument("--index", dest="mds_index", type=int, required=True)

    p = sub.add_parser("sat", help="solve a DIMACS CNF file")
    p.add_argument("input_path", metavar="CNF_FILE")
    _add_output_arg(p)

    p = sub.add_parser("oracle", help="brute-force domatic number (small graphs)")
    _add_graph_args(p)
    _add_output_arg(p)
    p.add_argument("--oracle-limit", type=int, default=None)

    p = sub.add_parser("verify", help="check a witness partition")
    _add_graph_args(p)
    p.add_argument("witness_path", metavar="WITNESS")

    p = sub.add_parser("bases", help="walk base and restart budget per max degree")
    _add_output_arg(p)
    p.add_argument("--min-delta", type=int, default=3)
    p.add_argument("--max-delta", type=int, default=8)
    p.add_argument("--n", dest="bases_n", type=int, default=None)
    p.add_argument("--lambda", dest="confidence_lambda", type=float, default=None)

    p = sub.add_parser("bench", help="run solvers over a seeded corpus")
    p.add_argument("--generator", required=True, choices=["gnp", "regular", "cycle", "planted"])
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--p", dest="edge_prob", type=float, default=0.3)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", dest="bench_mode", default="exact", choices=["exact", "randomized", "both"])
    p.add_argument("--lambda", dest="confidence_lambda", type=float, default=None)
    p.add_argument("--max-trials", type=int, default=None)
    p.add_argument("--out", dest="out_path", default=None)
    p.add_argument("--workers", type=int, default=None)
    return parser


def to_run_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    values = {k: v for k, v in vars(args).items() if k != "log_level" and v is not None}
    values.setdefault("workers", settings.workers)
    try:
        return RunConfig(**values)
    except ValidationError as e:
        problems = "; ".join(err["msg"] for err in e.errors())
        raise UsageError(f"invalid arguments: {problems}") from e

# ==============================================================================
# [SECTION 5] ENTRY POINT
# ==============================================================================

def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = get_settings()
        setup_logging(settings, args.log_level)
        cfg = to_run_config(args, settings)
        return COMMANDS[cfg.subcommand](cfg)
    except DomaticError as e:
        logger.error(f"{type(e).__name__}: {e.detail}")
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
