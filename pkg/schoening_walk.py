"""
Randomized 3-DNP for bounded-degree graphs: a CSP over {0, 1, 2} solved by
random-restart local search.

Every vertex v gets a variable x_v and a constraint over N[v] that holds iff
all three values appear among its variables; a solution is exactly a
partition into three dominating sets (part i = {v : x_v = i}).

One trial: uniform random start, then ``walk_length`` steps, each picking a
violated constraint uniformly, a variable of its scope uniformly and one of the
two other values uniformly. Trial t draws from its own numpy stream
``SeedSequence(seed, spawn_key=(t,))``, so sequential and pooled runs replay
the same trials.
"""

import logging
import math
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config import get_settings
from domination_oracle import Decision, Partition3, verify_partition
from errors import BudgetExceedsCapError, DomaticError, PipelineInvariantError
from graph_core import Graph, max_degree

logger = logging.getLogger("Domatic.Walk")

DOMAIN_SIZE = 3
TRIAL_BATCH = 256
# steps whose uniforms are drawn in one numpy call
WALK_CHUNK = 4096


# ==============================================================================
# [SECTION 1] CSP MODEL
# ==============================================================================

@dataclass(frozen=True)
class CspInstance:
    """Constraint v has scope (v, neighbours of v...) and holds iff its values cover {0, 1, 2}."""

    num_vars: int
    scopes: Tuple[Tuple[int, ...], ...]
    # l = max degree + 1, the largest constraint order
    max_order: int
    domain_size: int = DOMAIN_SIZE

    @property
    def orders(self) -> Tuple[int, ...]:
        return tuple(len(scope) for scope in self.scopes)

    @cached_property
    def constraints_of(self) -> Tuple[Tuple[int, ...], ...]:
        """Constraint ids whose scope contains each variable."""
        rows: List[List[int]] = [[] for _ in range(self.num_vars)]
        for c, scope in enumerate(self.scopes):
            for x in scope:
                rows[x].append(c)
        return tuple(tuple(r) for r in rows)

    def hopeless_constraints(self) -> List[int]:
        """Constraints of order < 3: three values can never appear."""
        return [c for c, scope in enumerate(self.scopes) if len(scope) < self.domain_size]


def build_csp(g: Graph) -> CspInstance:
    scopes = tuple((v, *g.adjacency[v]) for v in range(g.n))
    return CspInstance(g.n, scopes, max_degree(g) + 1)


def violated_constraints(c: CspInstance, a: Sequence[int]) -> List[int]:
    if len(a) != c.num_vars:
        raise DomaticError(f"assignment has {len(a)} values, CSP has {c.num_vars} variables")
    return [
        cid for cid, scope in enumerate(c.scopes)
        if len({a[x] for x in scope}) < c.domain_size
    ]


# ==============================================================================
# [SECTION 2] RESTART BUDGET
# ==============================================================================

def walk_base(delta: int) -> float:
    """3 * (1 - 1/(delta + 1)): per-vertex base of the expected number of restarts."""
    return 3.0 * (1.0 - 1.0 / (delta + 1))


def budget_for(
    delta: int,
    n: int,
    confidence_lambda: Optional[float] = None,
    cap: Optional[int] = None,
    strict: bool = False,
) -> int:
    """
    ceil(lambda * walk_base(delta)^n), clamped to the trial cap.

    The comparison with the cap happens in log-space so large n cannot
    overflow. Over the cap: WARNING and clamp, or ``BudgetExceedsCapError``
    when ``strict``.
    """
    settings = get_settings()
    lam = settings.default_lambda if confidence_lambda is None else confidence_lambda
    cap = settings.trial_cap if cap is None else cap
    if lam <= 0:
        raise DomaticError(f"confidence lambda must be positive, got {lam}")
    if delta < 1:
        raise DomaticError("restart budget needs a graph with at least one edge")
    base = walk_base(delta)
    log_budget = math.log(lam) + n * math.log(base)
    if log_budget > math.log(cap):
        message = f"budget exceeds cap: {lam:g} * {base:.4f}^{n} > {cap}"
        if strict:
            raise BudgetExceedsCapError(message)
        logger.warning(f"Walk: {message}, clamping to {cap}")
        return cap
    return max(1, min(cap, math.ceil(lam * base ** n)))


def restart_budget(
    g: Graph,
    confidence_lambda: Optional[float] = None,
    cap: Optional[int] = None,
    strict: bool = False,
) -> int:
    """Number of restarts for ``g``: ``budget_for(max_degree(g), n, ...)``."""
    return budget_for(max_degree(g), g.n, confidence_lambda, cap, strict)


# ==============================================================================
# [SECTION 3] WALK
# ==============================================================================

@dataclass(frozen=True)
class WalkConfig:
    seed: int = 0
    walk_length: Optional[int] = None    # default 3n
    max_trials: Optional[int] = None     # default restart_budget(g, confidence_lambda)
    confidence_lambda: Optional[float] = None
    workers: int = 1
    early_stop: bool = True

    def __post_init__(self):
        if self.seed < 0:
            raise DomaticError(f"seed must be a non-negative integer, got {self.seed}")
        if self.walk_length is not None and self.walk_length < 1:
            raise DomaticError(f"walk_length must be >= 1, got {self.walk_length}")
        if self.max_trials is not None and self.max_trials < 1:
            raise DomaticError(f"max_trials must be >= 1, got {self.max_trials}")
        if self.workers < 1:
            raise DomaticError(f"workers must be >= 1, got {self.workers}")
        if not self.early_stop:
            raise DomaticError("the walk always stops at the first solution")


@dataclass(frozen=True)
class RandomizedReport:
    decision: Decision
    witness: Optional[Partition3]
    trials_used: int
    steps_used: int
    seed: int
    walk_length: int = 0
    max_trials: int = 0
    reason: Optional[str] = None


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(trial,)))


def run_trial(
    csp: CspInstance,
    seed: int,
    trial: int,
    walk_length: int,
    trace: Optional[list] = None,
) -> Tuple[Optional[Tuple[int, ...]], int]:
    """
    One restart. Returns (solution or None, steps taken).

    ``trace`` (optional) receives one dict per step: the assignment before the
    step, the chosen constraint, the variable and its new value.
    """
    rng = trial_rng(seed, trial)
    n = csp.num_vars
    a = rng.integers(0, DOMAIN_SIZE, size=n).tolist()

    scopes, constraints_of = csp.scopes, csp.constraints_of
    counts = [[0] * DOMAIN_SIZE for _ in range(n)]
    for cid, scope in enumerate(scopes):
        for x in scope:
            counts[cid][a[x]] += 1
    violated: List[int] = []
    pos = [-1] * n
    for cid in range(n):
        if 0 in counts[cid]:
            pos[cid] = len(violated)
            violated.append(cid)

    step = 0
    draws: List[List[float]] = []
    while step < walk_length:
        if not violated:
            return tuple(a), step
        if not draws:
            # uniforms come in bounded chunks, consumed from the back
            draws = rng.random((min(WALK_CHUNK, walk_length - step), 3)).tolist()
            draws.reverse()
        u_constraint, u_var, u_value = draws.pop()
        step += 1
        cid = violated[int(u_constraint * len(violated))]
        scope = scopes[cid]
        x = scope[int(u_var * len(scope))]
        old = a[x]
        new = (old + 1 + int(u_value * 2)) % DOMAIN_SIZE
        if trace is not None:
            trace.append({"before": tuple(a), "constraint": cid, "var": x, "new": new})
        a[x] = new
        for other in constraints_of[x]:
            row = counts[other]
            row[old] -= 1
            row[new] += 1
            bad = 0 in row
            if bad and pos[other] < 0:
                pos[other] = len(violated)
                violated.append(other)
            elif not bad and pos[other] >= 0:
                # swap-remove
                last = violated.pop()
                if last != other:
                    violated[pos[other]] = last
                    pos[last] = pos[other]
                pos[other] = -1
    if not violated:
        return tuple(a), walk_length
    return None, walk_length


def _run_trial_batch(
    csp: CspInstance, seed: int, start: int, stop: int, walk_length: int
) -> Tuple[Optional[int], Optional[Tuple[int, ...]], int, int]:
    """Trials start..stop-1 in order; (winning trial, solution, trials run, steps)."""
    steps = 0
    for trial in range(start, stop):
        solution, taken = run_trial(csp, seed, trial, walk_length)
        steps += taken
        if solution is not None:
            return trial, solution, trial - start + 1, steps
    return None, None, stop - start, steps


def _certify(g: Graph, solution: Tuple[int, ...]) -> Partition3:
    partition = Partition3(solution)
    if not verify_partition(g, partition):
        raise PipelineInvariantError("walk returned an assignment that is not a 3-domatic partition")
    return partition


def _walk_pooled(g, csp, cfg, walk_length, max_trials):
    trials = steps = 0
    next_start = 0
    in_flight = {}
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        while True:
            while next_start < max_trials and len(in_flight) < 2 * cfg.workers:
                stop = min(max_trials, next_start + TRIAL_BATCH)
                future = pool.submit(_run_trial_batch, csp, cfg.seed, next_start, stop, walk_length)
                in_flight[future] = next_start
                next_start = stop
            if not in_flight:
                return None, trials, steps
            done, _ = wait(in_flight, return_when=FIRST_COMPLETED)
            for future in [f for f in in_flight if f in done]:
                in_flight.pop(future)
                _winner, solution, ran, taken = future.result()
                trials += ran
                steps += taken
                if solution is not None:
                    for pending in in_flight:
                        pending.cancel()
                    return _certify(g, solution), trials, steps


def solve_randomized(g: Graph, cfg: WalkConfig = WalkConfig()) -> RandomizedReport:
    """
    Monte Carlo 3-DNP: ``yes`` answers carry a certified partition,
    ``probably-no`` means no solution was met within ``max_trials`` restarts.
    """
    csp = build_csp(g)
    walk_length = cfg.walk_length or max(1, DOMAIN_SIZE * g.n)

    hopeless = csp.hopeless_constraints()
    if hopeless:
        v = hopeless[0]
        reason = f"vertex {v + 1} has only {len(csp.scopes[v])} vertices in its closed neighbourhood (< 3)"
        logger.info(f"Walk: short-circuit, {reason}")
        return RandomizedReport(
            Decision.PROBABLY_NO, None, 0, 0, cfg.seed, walk_length, 0, reason=reason
        )

    if cfg.max_trials is not None:
        max_trials = cfg.max_trials
    elif g.n == 0:
        max_trials = 1
    else:
        max_trials = restart_budget(g, cfg.confidence_lambda)
    logger.info(
        f"Walk: n={g.n} max_degree={csp.max_order - 1} seed={cfg.seed} "
        f"walk_length={walk_length} max_trials={max_trials} workers={cfg.workers}"
    )

    if cfg.workers > 1:
        witness, trials, steps = _walk_pooled(g, csp, cfg, walk_length, max_trials)
    else:
        witness, trials, steps = None, 0, 0
        for trial in range(max_trials):
            solution, taken = run_trial(csp, cfg.seed, trial, walk_length)
            trials += 1
            steps += taken
            if solution is not None:
                witness = _certify(g, solution)
                break

    if witness is None:
        logger.info(f"Walk: no solution in {trials} trials ({steps} steps)")
        return RandomizedReport(
            Decision.PROBABLY_NO, None, trials, steps, cfg.seed, walk_length, max_trials
        )
    logger.info(f"Walk: YES on trial {trials} ({steps} steps)")
    return RandomizedReport(Decision.YES, witness, trials, steps, cfg.seed, walk_length, max_trials)
