"""
Complete CNF SAT decision procedure (DPLL) with model extraction.

Unit propagation, pure-literal elimination, then branching on the variable
with the most occurrences (lowest index on ties), true before false. No
randomisation: the same formula always gives the same model and counters.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from errors import PipelineInvariantError
from nae_sat_encoding import CnfFormula, NaeFormula, evaluate_nae, model_satisfies, nae_to_sat

logger = logging.getLogger("Domatic.Sat")

Clause = FrozenSet[int]


class SatStatus(str, Enum):
    SATISFIABLE = "satisfiable"
    UNSATISFIABLE = "unsatisfiable"


@dataclass
class SatStats:
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0
    pure_literals: int = 0


@dataclass(frozen=True)
class SatResult:
    status: SatStatus
    model: Optional[Tuple[bool, ...]] = None
    stats: SatStats = field(default_factory=SatStats)

    @property
    def satisfiable(self) -> bool:
        return self.status is SatStatus.SATISFIABLE


def _assign(clauses: List[Clause], lit: int) -> Optional[List[Clause]]:
    """Set ``lit`` true: drop satisfied clauses, shrink the others. None on an empty clause."""
    reduced = []
    for clause in clauses:
        if lit in clause:
            continue
        if -lit in clause:
            clause = clause - {-lit}
            if not clause:
                return None
        reduced.append(clause)
    return reduced


class DpllSolver:
    """Single-use solver for one formula; not shared between threads."""

    def __init__(self, formula: CnfFormula):
        self.formula = formula
        self.stats = SatStats()

    def solve(self) -> SatResult:
        clauses = [frozenset(c) for c in self.formula.clauses]
        if any(not c for c in clauses):
            self.stats.conflicts += 1
            return SatResult(SatStatus.UNSATISFIABLE, None, self.stats)

        assignment = self._search(clauses, {})
        if assignment is None:
            return SatResult(SatStatus.UNSATISFIABLE, None, self.stats)

        # unconstrained variables default to False
        model = tuple(assignment.get(var, False) for var in range(1, self.formula.num_vars + 1))
        if not model_satisfies(self.formula, model):
            raise PipelineInvariantError("DPLL produced a model that violates the formula")
        return SatResult(SatStatus.SATISFIABLE, model, self.stats)

    def _simplify(self, clauses: List[Clause], assignment: Dict[int, bool]) -> Optional[List[Clause]]:
        while True:
            unit = next((c for c in clauses if len(c) == 1), None)
            if unit is not None:
                (lit,) = unit
                assignment[abs(lit)] = lit > 0
                self.stats.propagations += 1
                clauses = _assign(clauses, lit)
                if clauses is None:
                    self.stats.conflicts += 1
                    return None
                continue

            literals = set().union(*clauses) if clauses else set()
            pure = {lit for lit in literals if -lit not in literals}
            if pure:
                for lit in sorted(pure, key=abs):
                    assignment[abs(lit)] = lit > 0
                self.stats.pure_literals += len(pure)
                clauses = [c for c in clauses if not c & pure]
                continue
            return clauses

    def _search(self, clauses: List[Clause], assignment: Dict[int, bool]) -> Optional[Dict[int, bool]]:
        clauses = self._simplify(clauses, assignment)
        if clauses is None:
            return None
        if not clauses:
            return assignment

        occurrences = Counter(abs(lit) for clause in clauses for lit in clause)
        var = max(occurrences, key=lambda v: (occurrences[v], -v))
        for value in (True, False):
            self.stats.decisions += 1
            lit = var if value else -var
            reduced = _assign(clauses, lit)
            if reduced is None:
                self.stats.conflicts += 1
                continue
            result = self._search(reduced, {**assignment, var: value})
            if result is not None:
                return result
        return None


def solve_sat(f: CnfFormula) -> SatResult:
    """Decide ``f``; a satisfiable result carries a total model over ``f.num_vars``."""
    result = DpllSolver(f).solve()
    logger.debug(
        f"Sat: vars={f.num_vars} clauses={f.m} -> {result.status.value} "
        f"(decisions={result.stats.decisions}, propagations={result.stats.propagations}, "
        f"conflicts={result.stats.conflicts})"
    )
    return result


def solve_nae_direct(f: NaeFormula) -> Optional[Tuple[bool, ...]]:
    """NAE assignment for ``f`` via the CNF reduction, or None when none exists."""
    result = solve_sat(nae_to_sat(f))
    if not result.satisfiable:
        return None
    # CNF variable i + 1 is NAE variable i
    assignment = result.model[: f.num_vars]
    if not evaluate_nae(f, assignment):
        raise PipelineInvariantError("CNF model does not decode to a NAE assignment")
    return assignment
