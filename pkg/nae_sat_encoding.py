"""
NAE-SAT encoding of 3-domatic partitions around a fixed dominating set D,
the NAE -> CNF reduction, and DIMACS CNF input/output.

For each vertex v the NAE clause C_v holds the variables x_u of the vertices
u in N[v] outside D. A not-all-equal assignment splits V - D into a "true"
part and a "false" part that both meet every closed neighbourhood; together
with D that is a partition into three dominating sets.

CNF literals use the DIMACS convention: variable index i (0-based) appears as
``i + 1`` (positive) or ``-(i + 1)`` (negated).
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from errors import CnfParseError, PartialAssignmentError
from graph_core import Graph, VertexSet

logger = logging.getLogger("Domatic.Encoding")


# ==============================================================================
# [SECTION 1] FORMULA TYPES
# ==============================================================================

@dataclass(frozen=True)
class NaeFormula:
    """
    One clause per vertex of the source graph, all literals positive.

    ``variables[i]`` is the vertex behind variable i; ``clauses[j]`` holds
    variable indices (ascending) and came from vertex ``vertex_of_clause[j]``.
    """

    variables: Tuple[int, ...]
    clauses: Tuple[Tuple[int, ...], ...]
    vertex_of_clause: Tuple[int, ...]

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: Tuple[Tuple[int, ...], ...]
    # clause count before duplicate removal (2 per NAE clause), when built by nae_to_sat
    pre_dedup_count: Optional[int] = None

    def __post_init__(self):
        for clause in self.clauses:
            lits = set(clause)
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} outside 1..{self.num_vars}")
                if -lit in lits:
                    raise ValueError(f"clause {clause} contains {lit} and its negation")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @classmethod
    def from_clauses(cls, num_vars: int, clauses: Iterable[Iterable[int]]) -> "CnfFormula":
        return cls(num_vars, tuple(tuple(c) for c in clauses))


# ==============================================================================
# [SECTION 2] CONSTRUCTION & EVALUATION
# ==============================================================================

def build_nae_formula(g: Graph, d: VertexSet) -> NaeFormula:
    """
    C_v = {x_u : u in N[v], u not in D} for every vertex v.

    Only vertices outside D become variables; every such u occurs at least in
    its own clause C_u. Empty and singleton clauses are kept: they make the
    formula NAE-unsatisfiable, which is the right answer for that D.
    """
    variables = tuple(v for v in range(g.n) if v not in d)
    index = {vertex: i for i, vertex in enumerate(variables)}
    clauses = []
    for v in range(g.n):
        clause = tuple(index[u] for u in VertexSet(g.n, g.closed_masks[v]) if u not in d)
        clauses.append(clause)
    formula = NaeFormula(variables, tuple(clauses), tuple(range(g.n)))
    logger.debug(f"Encoding: D={d} -> {formula.num_vars} vars, {formula.num_clauses} NAE clauses")
    return formula


def _check_total(f: NaeFormula, a: Sequence[bool]):
    if len(a) != f.num_vars:
        raise PartialAssignmentError(
            f"assignment covers {len(a)} variables, formula has {f.num_vars}"
        )


def evaluate_nae(f: NaeFormula, a: Sequence[bool]) -> bool:
    """Every clause needs a true and a false literal; empty/singleton clauses always fail."""
    _check_total(f, a)
    for clause in f.clauses:
        values = {bool(a[i]) for i in clause}
        if len(values) < 2:
            return False
    return True


def nae_to_sat(f: NaeFormula) -> CnfFormula:
    """
    Standard reduction: every NAE clause yields itself plus its all-negated copy.

    Exactly ``2 * num_clauses`` clauses are produced; textual duplicates are then
    dropped (first occurrence kept) and the original count is kept in
    ``pre_dedup_count``.
    """
    produced: List[Tuple[int, ...]] = []
    for clause in f.clauses:
        positive = tuple(i + 1 for i in clause)
        produced.append(positive)
        produced.append(tuple(-lit for lit in positive))
    unique = tuple(dict.fromkeys(produced))
    return CnfFormula(f.num_vars, unique, pre_dedup_count=len(produced))


def model_satisfies(f: CnfFormula, model: Sequence[bool]) -> bool:
    """Independent model check: every clause has a literal made true by ``model``."""
    if len(model) < f.num_vars:
        raise PartialAssignmentError(f"model covers {len(model)} of {f.num_vars} variables")
    return all(
        any(bool(model[abs(lit) - 1]) == (lit > 0) for lit in clause)
        for clause in f.clauses
    )


# ==============================================================================
# [SECTION 3] DIMACS CNF
# ==============================================================================

def export_dimacs_cnf(f: CnfFormula, comments: Sequence[str] = ()) -> str:
    """``p cnf <vars> <clauses>`` then one ``lit ... 0`` line per clause (``0`` for empty)."""
    lines = [f"c {text}" for text in comments]
    lines.append(f"p cnf {f.num_vars} {f.m}")
    for clause in f.clauses:
        lines.append(" ".join([*map(str, clause), "0"]))
    return "\n".join(lines)


def parse_dimacs_cnf(text: str) -> CnfFormula:
    """
    Parse DIMACS CNF. Clauses may span lines and end at ``0``; ``%`` ends the
    clause section (SATLIB files). Tautologies are dropped and repeated
    literals collapsed.
    """
    num_vars: Optional[int] = None
    declared = 0
    clauses: List[Tuple[int, ...]] = []
    current: List[int] = []
    tautologies = 0
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "%":
            break
        if tokens[0] == "p":
            if num_vars is not None or len(tokens) != 4 or tokens[1] != "cnf":
                raise CnfParseError(f"invalid problem line {raw.strip()!r}", lineno)
            try:
                num_vars, declared = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise CnfParseError(f"invalid problem line {raw.strip()!r}", lineno) from None
            continue
        if num_vars is None:
            raise CnfParseError("clause before problem line 'p cnf <vars> <clauses>'", lineno)
        for token in tokens:
            try:
                lit = int(token)
            except ValueError:
                raise CnfParseError(f"invalid literal {token!r}", lineno) from None
            if abs(lit) > num_vars:
                raise CnfParseError(f"literal {lit} exceeds declared {num_vars} variables", lineno)
            if lit != 0:
                current.append(lit)
                continue
            clause = tuple(dict.fromkeys(current))
            current = []
            if any(-lit in clause for lit in clause):
                tautologies += 1
                continue
            clauses.append(clause)
    if current:
        raise CnfParseError("last clause is not terminated by 0", lineno)
    if num_vars is None:
        raise CnfParseError("missing problem line 'p cnf <vars> <clauses>'")
    if len(clauses) + tautologies != declared:
        logger.warning(f"Encoding: header declares {declared} clauses, read {len(clauses) + tautologies}")
    if tautologies:
        logger.info(f"Encoding: dropped {tautologies} tautological clauses")
    return CnfFormula(num_vars, tuple(clauses))
