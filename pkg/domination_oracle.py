"""
Ground-truth domination predicates and brute-force oracles.

Everything here is exhaustive and deliberately simple; the fast solvers are
checked against these functions on small graphs.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from config import get_settings
from errors import DomaticError, MalformedPartitionError, OracleLimitError
from graph_core import Graph, VertexSet, closed_neighborhood_of_set, isolated_vertices, min_degree

logger = logging.getLogger("Domatic.Oracle")

NUM_PARTS = 3


class Decision(str, Enum):
    YES = "yes"
    NO = "no"
    # one-sided Monte Carlo answer: no witness found within the budget
    PROBABLY_NO = "probably-no"


# ==============================================================================
# [SECTION 1] PARTITION WITNESS
# ==============================================================================

@dataclass(frozen=True)
class Partition3:
    """Vertex -> part in {0, 1, 2}; the three parts are derived from the assignment."""

    assignment: Tuple[int, ...]

    def __post_init__(self):
        bad = [v for v, part in enumerate(self.assignment) if part not in (0, 1, 2)]
        if bad:
            raise MalformedPartitionError(f"vertices {bad} are assigned to a part outside {{0, 1, 2}}")

    @property
    def n(self) -> int:
        return len(self.assignment)

    @cached_property
    def parts(self) -> Tuple[VertexSet, VertexSet, VertexSet]:
        masks = [0, 0, 0]
        for v, part in enumerate(self.assignment):
            masks[part] |= 1 << v
        return tuple(VertexSet(self.n, m) for m in masks)

    @classmethod
    def from_parts(cls, n: int, parts: Sequence[Iterable[int]]) -> "Partition3":
        """Build from three 0-indexed vertex collections; they must be disjoint and cover 0..n-1."""
        if len(parts) != NUM_PARTS:
            raise MalformedPartitionError(f"expected {NUM_PARTS} parts, got {len(parts)}")
        assignment: List[Optional[int]] = [None] * n
        for index, part in enumerate(parts):
            for v in part:
                if not 0 <= v < n:
                    raise MalformedPartitionError(f"vertex {v} out of range 0..{n - 1}")
                if assignment[v] is not None:
                    raise MalformedPartitionError(f"vertex {v} appears in parts {assignment[v]} and {index}")
                assignment[v] = index
        missing = [v for v, part in enumerate(assignment) if part is None]
        if missing:
            raise MalformedPartitionError(f"vertices {missing} are not covered by any part")
        return cls(tuple(assignment))

    @classmethod
    def from_one_indexed(cls, n: int, parts: Sequence[Iterable[int]]) -> "Partition3":
        return cls.from_parts(n, [[v - 1 for v in part] for part in parts])

    def to_one_indexed(self) -> List[List[int]]:
        return [part.to_one_indexed() for part in self.parts]


# ==============================================================================
# [SECTION 2] PREDICATES
# ==============================================================================

def is_dominating(g: Graph, d: VertexSet) -> bool:
    """D dominates G iff N[D] = V."""
    return closed_neighborhood_of_set(g, d).mask == g.full_mask


def is_minimal_dominating(g: Graph, d: VertexSet) -> bool:
    """
    D dominates and no proper subset does.

    Domination is monotone under supersets, so if some proper subset of D
    dominates then some D - {v} does; single removals are enough.
    """
    if not is_dominating(g, d):
        return False
    masks = g.closed_masks
    full = g.full_mask
    for v in d:
        cover = 0
        for u in d:
            if u != v:
                cover |= masks[u]
        if cover == full:
            return False
    return True


def verify_partition(g: Graph, p: Partition3) -> bool:
    """True iff all three parts of ``p`` dominate ``g``."""
    if p.n != g.n:
        raise MalformedPartitionError(f"partition covers {p.n} vertices, graph has {g.n}")
    return all(is_dominating(g, part) for part in p.parts)


# ==============================================================================
# [SECTION 3] BRUTE-FORCE ORACLES
# ==============================================================================

def _check_limit(g: Graph, limit: Optional[int], default: int, what: str):
    limit = default if limit is None else limit
    if g.n > limit:
        raise OracleLimitError(g.n, limit, what)


def brute_force_minimal_dominating_sets(g: Graph, limit: Optional[int] = None) -> List[VertexSet]:
    """
    All minimal dominating sets by scanning every subset of V.

    Returns them sorted by ``VertexSet.canonical_key`` (size, then members).
    """
    _check_limit(g, limit, get_settings().oracle_subset_limit, "subset")
    n, full, masks = g.n, g.full_mask, g.closed_masks
    # cover[S] = N[S], filled from the subset without its lowest member
    cover = [0] * (1 << n)
    for s in range(1, 1 << n):
        low = s & -s
        cover[s] = cover[s ^ low] | masks[low.bit_length() - 1]

    found = []
    for s in range(1 << n):
        if cover[s] != full:
            continue
        rest, minimal = s, True
        while rest:
            low = rest & -rest
            if cover[s ^ low] == full:
                minimal = False
                break
            rest ^= low
        if minimal:
            found.append(VertexSet(n, s))
    found.sort(key=lambda vs: vs.canonical_key)
    logger.debug(f"Oracle: {len(found)} minimal dominating sets for n={n}")
    return found


def brute_force_domatic_at_least(
    g: Graph, k: int, limit: Optional[int] = None
) -> Optional[List[VertexSet]]:
    """
    Search all k^n assignments for k disjoint dominating sets covering V.

    Vertices are assigned in index order; vertex i may only open part
    ``used`` (the next unused label), which fixes vertex 0 to part 0 and removes
    label permutations. A branch dies as soon as a vertex whose whole closed
    neighbourhood is assigned misses some part.

    Returns:
        The k parts (as VertexSets), or None when no such partition exists.
    """
    if k < 1:
        raise DomaticError(f"k must be a positive integer, got {k}")
    _check_limit(g, limit, get_settings().oracle_partition_limit, "partition")
    n, masks = g.n, g.closed_masks
    if n == 0:
        return [VertexSet.empty(0) for _ in range(k)]

    # complete_at[i]: vertices whose N[u] is fully assigned once vertex i is
    complete_at: List[List[int]] = [[] for _ in range(n)]
    for u in range(n):
        complete_at[masks[u].bit_length() - 1].append(u)

    part_masks = [0] * k

    def place(i: int, used: int) -> bool:
        if i == n:
            return True
        bit = 1 << i
        for part in range(min(used + 1, k)):
            part_masks[part] |= bit
            if all(all(masks[u] & pm for pm in part_masks) for u in complete_at[i]):
                if place(i + 1, max(used, part + 1)):
                    return True
            part_masks[part] ^= bit
        return False

    if not place(0, 0):
        return None
    return [VertexSet(n, pm) for pm in part_masks]


def brute_force_domatic_number(g: Graph, limit: Optional[int] = None) -> int:
    """δ(G): the largest k for which ``brute_force_domatic_at_least`` succeeds."""
    if g.n == 0:
        raise DomaticError("domatic number is undefined for the empty graph")
    _check_limit(g, limit, get_settings().oracle_partition_limit, "partition")
    if len(isolated_vertices(g)):
        # an isolated vertex belongs to every dominating set
        return 1
    best = 1
    # a vertex of minimum degree sees at most min_degree + 1 parts
    for k in range(2, min_degree(g) + 2):
        if brute_force_domatic_at_least(g, k, limit=limit) is None:
            break
        best = k
    return best
