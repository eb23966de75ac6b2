"""
Benchmark harness: run the exact and/or randomized solver over a seeded corpus
and emit one BenchRecord per (instance, mode) as CSV, JSON lines or Excel.
"""

import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, List, Optional, Tuple

import pandas as pd

from exact_pipeline import solve_exact
from graph_core import Graph, max_degree
from helpers.corpus_generators import generate_corpus
from mds_enum import count_minimal_dominating_sets, mds_count_bound
from models import BENCH_COLUMNS, BenchRecord, RunConfig, SolveMode
from schoening_walk import WalkConfig, solve_randomized

logger = logging.getLogger("Domatic.Bench")


def run_instance(
    instance_id: str,
    g: Graph,
    mode: SolveMode,
    seed: int = 0,
    confidence_lambda: Optional[float] = None,
    max_trials: Optional[int] = None,
) -> BenchRecord:
    """One solver run; wall time covers the solver only, not the MDS count."""
    mds_count = count_minimal_dominating_sets(g)
    start = time.perf_counter()
    if mode is SolveMode.EXACT:
        report = solve_exact(g)
        counters = {"sat_calls": report.sat_calls}
    else:
        walk_cfg = WalkConfig(seed=seed, confidence_lambda=confidence_lambda, max_trials=max_trials)
        report = solve_randomized(g, walk_cfg)
        counters = {"trials": report.trials_used}
    wall_ms = (time.perf_counter() - start) * 1000.0
    return BenchRecord(
        id=instance_id,
        n=g.n,
        m=g.m_edges,
        delta_max=max_degree(g),
        mode=mode,
        decision=report.decision,
        mds_count=mds_count,
        wall_ms=round(wall_ms, 3),
        **counters,
    )


def _run_job(job: Tuple[str, Graph, SolveMode, int, Optional[float], Optional[int]]) -> BenchRecord:
    return run_instance(*job)


def run_bench(cfg: RunConfig) -> List[BenchRecord]:
    corpus = generate_corpus(
        cfg.generator, cfg.n_min, cfg.n_max, cfg.count, cfg.seed, p=cfg.edge_prob, degree=cfg.degree
    )
    modes = [SolveMode.EXACT, SolveMode.RANDOMIZED] if cfg.bench_mode == "both" else [SolveMode(cfg.bench_mode)]
    jobs = [(iid, g, mode, cfg.seed, cfg.confidence_lambda, cfg.max_trials) for iid, g in corpus for mode in modes]

    if cfg.workers > 1:
        # records come back in job order; the parent is the only writer
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(_run_job, jobs))
    else:
        records = [_run_job(job) for job in jobs]
    summarize(records)
    return records


def summarize(records: Iterable[BenchRecord]):
    records = list(records)
    if not records:
        logger.warning("Bench: no records")
        return
    yes = sum(1 for r in records if r.decision.value == "yes")
    worst = max(
        (r.mds_count / mds_count_bound(r.n) for r in records if r.mds_count is not None),
        default=0.0,
    )
    logger.info(f"Bench: {len(records)} runs, {yes} yes, max MDS count / 1.7697^n = {worst:.4f}")
    if worst > 1.0:
        logger.error("Bench: minimal dominating set count above 1.7697^n, enumeration is broken")


def records_frame(records: Iterable[BenchRecord]) -> pd.DataFrame:
    rows = [r.model_dump(mode="json") for r in records]
    frame = pd.DataFrame(rows, columns=BENCH_COLUMNS)
    # nullable ints so empty counters stay blank instead of turning into floats
    for column in ("mds_count", "sat_calls", "trials"):
        frame[column] = frame[column].astype("Int64")
    return frame


def write_records(records: List[BenchRecord], out_path: Optional[str] = None):
    """CSV to stdout by default; ``.csv``, ``.jsonl`` or ``.xlsx`` by file suffix."""
    if out_path is None:
        records_frame(records).to_csv(sys.stdout, index=False)
    elif out_path.endswith(".jsonl"):
        with open(out_path, "w", encoding="utf-8") as f:
            for r in records:
                f.write(r.model_dump_json() + "\n")
    elif out_path.endswith(".xlsx"):
        records_frame(records).to_excel(out_path, index=False, sheet_name="bench", engine="openpyxl")
    else:
        records_frame(records).to_csv(out_path, index=False)
    logger.info(f"Bench: wrote {len(records)} records to {out_path or 'stdout'}")
