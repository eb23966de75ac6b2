"""
Exact 3-DNP decision: minimal dominating sets -> NAE-SAT -> CNF -> DPLL.

G has three disjoint dominating sets iff for some minimal dominating set D
the NAE formula built around D is satisfiable. Candidates are tried in
enumeration order; the first satisfiable one is decoded (part 2 = D) and
certified with ``verify_partition`` before it is returned.
"""

import logging
from concurrent.futures import FIRST_COMPLETED, Future, ProcessPoolExecutor, wait
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

from domination_oracle import Decision, Partition3, is_dominating, verify_partition
from errors import PipelineInvariantError
from graph_core import Graph, VertexSet, isolated_vertices
from mds_enum import EnumerationStats, iter_minimal_dominating_sets
from nae_sat_encoding import NaeFormula, build_nae_formula, evaluate_nae, nae_to_sat
from sat_engine import solve_sat

logger = logging.getLogger("Domatic.Pipeline")

# part label that receives the dominating set D when decoding
D_PART = 2


@dataclass(frozen=True)
class ExactReport:
    decision: Decision
    witness: Optional[Partition3]
    candidates_tried: int
    sat_calls: int
    reason: Optional[str] = None
    # the minimal dominating set that produced the witness
    dominating_set: Optional[VertexSet] = None


def decode_partition(g: Graph, d: VertexSet, f: NaeFormula, model: Sequence[bool]) -> Partition3:
    """
    Part 2 = D, part 1 = variables set true, part 0 = variables set false.

    Raises:
        PipelineInvariantError: the model is not a NAE solution, or the decoded
            partition does not certify (both mean a bug upstream).
    """
    if not evaluate_nae(f, model):
        raise PipelineInvariantError(f"model does not NAE-satisfy the formula for D={d}")
    assignment = [D_PART] * g.n
    for i, vertex in enumerate(f.variables):
        assignment[vertex] = 1 if model[i] else 0
    partition = Partition3(tuple(assignment))
    if not verify_partition(g, partition):
        raise PipelineInvariantError(f"decoded partition for D={d} is not a 3-domatic partition")
    return partition


def check_candidate(g: Graph, d: VertexSet) -> Optional[Partition3]:
    """Encode, reduce and solve for one dominating set; the certified partition or None."""
    formula = build_nae_formula(g, d)
    result = solve_sat(nae_to_sat(formula))
    if not result.satisfiable:
        return None
    return decode_partition(g, d, formula, result.model[: formula.num_vars])


def _check_candidate_task(g: Graph, mask: int) -> Optional[Partition3]:
    return check_candidate(g, VertexSet(g.n, mask))


def _isolated_report(g: Graph) -> Optional[ExactReport]:
    isolated = isolated_vertices(g)
    if not len(isolated):
        return None
    first = next(iter(isolated)) + 1
    reason = (
        f"isolated vertex {first} lies in every dominating set, "
        f"so the domatic number is 1 < 3"
    )
    logger.info(f"Pipeline: short-circuit, {reason}")
    return ExactReport(Decision.NO, None, 0, 0, reason=reason)


def _solve_sequential(g: Graph) -> ExactReport:
    stats = EnumerationStats()
    tried = 0
    for d in iter_minimal_dominating_sets(g, stats):
        tried += 1
        witness = check_candidate(g, d)
        if witness is not None:
            logger.info(f"Pipeline: YES after {tried} candidates, D={d.to_one_indexed()}")
            return ExactReport(Decision.YES, witness, tried, tried, dominating_set=d)
        logger.debug(f"Pipeline: candidate #{tried} D={d.to_one_indexed()} is NAE-unsatisfiable")
    logger.info(f"Pipeline: NO after exhausting {tried} minimal dominating sets")
    return ExactReport(Decision.NO, None, tried, tried)


def _solve_pooled(g: Graph, workers: int) -> ExactReport:
    """
    Candidates go to a bounded process pool, at most ``2 * workers`` in flight.
    The first certified witness wins; counters count completed candidates.
    """
    completed = 0
    in_flight: Dict[Future, VertexSet] = {}
    candidates = iter_minimal_dominating_sets(g)
    exhausted = False
    with ProcessPoolExecutor(max_workers=workers) as pool:
        while True:
            while not exhausted and len(in_flight) < 2 * workers:
                d = next(candidates, None)
                if d is None:
                    exhausted = True
                    break
                in_flight[pool.submit(_check_candidate_task, g, d.mask)] = d
            if not in_flight:
                break
            done, _ = wait(in_flight, return_when=FIRST_COMPLETED)
            # scan in submission order so a found witness is never dropped
            for future in [f for f in in_flight if f in done]:
                d = in_flight.pop(future)
                completed += 1
                witness = future.result()
                if witness is not None:
                    for pending in in_flight:
                        pending.cancel()
                    logger.info(f"Pipeline: YES (pool of {workers}) after {completed} candidates")
                    return ExactReport(Decision.YES, witness, completed, completed, dominating_set=d)
    logger.info(f"Pipeline: NO (pool of {workers}) after exhausting {completed} minimal dominating sets")
    return ExactReport(Decision.NO, None, completed, completed)


def solve_exact(g: Graph, workers: int = 1) -> ExactReport:
    """
    Decide whether V splits into three dominating sets.

    With ``workers == 1`` (default) the run is sequential and fully
    reproducible; with more workers the decision is the same but the witness
    and counters may differ.
    """
    short = _isolated_report(g)
    if short is not None:
        return short
    logger.info(f"Pipeline: exact solve on n={g.n}, m={g.m_edges}, workers={workers}")
    report = _solve_sequential(g) if workers <= 1 else _solve_pooled(g, workers)
    if report.witness is not None and not (
        verify_partition(g, report.witness) and is_dominating(g, report.dominating_set)
    ):
        raise PipelineInvariantError("exact pipeline returned an uncertified witness")
    return report
