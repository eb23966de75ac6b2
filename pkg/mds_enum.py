"""
Enumeration of all minimal dominating sets.

Branch over vertices 0..n-1 in index order; each vertex is selected or
excluded (vertices not reached yet are undecided). Two prunings keep the tree
small:

* a vertex whose closed neighbourhood no longer contains a selected or
  undecided vertex can never be dominated;
* a selected vertex without a private neighbour (a vertex of N[s] dominated by
  s alone) stays that way when more vertices are selected, so the branch can
  only produce non-minimal sets.

Leaves are emitted after an explicit ``is_minimal_dominating`` check. Each leaf
is a distinct selected set, so nothing is emitted twice.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Iterator, List, Optional, Tuple

from domination_oracle import is_minimal_dominating
from graph_core import Graph, VertexSet

logger = logging.getLogger("Domatic.Enum")

# Known upper bound on the number of minimal dominating sets of an n-vertex graph
MDS_COUNT_BASE = 1.7697


@dataclass
class EnumerationStats:
    count: int = 0
    nodes_visited: int = 0
    max_depth: int = 0


def iter_minimal_dominating_sets(g: Graph, stats: Optional[EnumerationStats] = None) -> Iterator[VertexSet]:
    """
    Lazily yield every minimal dominating set of ``g`` in branching order
    (select before exclude, vertices by index).

    Precondition: no isolated vertices (checked by the callers that care).
    """
    stats = EnumerationStats() if stats is None else stats
    n, masks = g.n, g.closed_masks
    # vertices within distance two of v: whose privacy can change when v is selected
    reach2: List[int] = []
    for v in range(n):
        mask = 0
        for u in VertexSet(n, masks[v]):
            mask |= masks[u]
        reach2.append(mask)
    dom_count = [0] * n
    closed_lists = [tuple(VertexSet(n, m)) for m in masks]

    def has_private(s: int) -> bool:
        return any(dom_count[w] == 1 for w in closed_lists[s])

    # explicit stack of (vertex, selected mask, phase): phase 0 enters the node
    # and tries "select", phase 1 undoes the selection and tries "exclude"
    stack: List[Tuple[int, int, int]] = [(0, 0, 0)]
    while stack:
        i, selected, phase = stack.pop()
        bit = 1 << i

        if phase == 1:
            for w in closed_lists[i]:
                dom_count[w] -= 1
            available = selected | (g.full_mask & ~((bit << 1) - 1))
            if all(masks[u] & available for u in closed_lists[i]):
                stack.append((i + 1, selected, 0))
            continue

        stats.nodes_visited += 1
        if i > stats.max_depth:
            stats.max_depth = i
        if i == n:
            candidate = VertexSet(n, selected)
            if is_minimal_dominating(g, candidate):
                stats.count += 1
                yield candidate
            else:
                logger.error(f"Enum: leaf {candidate} failed the minimality check")
            continue

        for w in closed_lists[i]:
            dom_count[w] += 1
        chosen = selected | bit
        rest = chosen & reach2[i]
        alive = True
        while rest:
            low = rest & -rest
            if not has_private(low.bit_length() - 1):
                alive = False
                break
            rest ^= low
        stack.append((i, selected, 1))
        if alive:
            stack.append((i + 1, chosen, 0))


def enumerate_minimal_dominating_sets(g: Graph, visitor: Callable[[VertexSet], None]) -> EnumerationStats:
    """Call ``visitor`` once per minimal dominating set; returns the run's counters."""
    stats = EnumerationStats()
    for d in iter_minimal_dominating_sets(g, stats):
        visitor(d)
    logger.debug(
        f"Enum: n={g.n} count={stats.count} nodes={stats.nodes_visited} depth={stats.max_depth}"
    )
    return stats


def count_minimal_dominating_sets(g: Graph) -> int:
    return enumerate_minimal_dominating_sets(g, lambda _d: None).count


def mds_count_bound(n: int) -> float:
    return MDS_COUNT_BASE ** n
