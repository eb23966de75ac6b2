"""
Seeded graph corpora for tests and the benchmark harness.
=========================================================
Generators:
1. gnp      - G(n, p) conditioned on having no isolated vertex
2. regular  - random d-regular graph (d-1 when n*d is odd)
3. cycle    - C_n
4. planted  - guaranteed yes-instance built around a balanced 3-partition

Identical (generator, sizes, count, seed) always gives the identical corpus:
every instance draws its own integer seed from a numpy SeedSequence.
"""

import logging
from typing import List, Optional, Tuple

import networkx as nx
import numpy as np

from errors import UsageError
from graph_core import Graph, max_degree

logger = logging.getLogger("Domatic.Corpus")

MAX_RESAMPLES = 1000


def instance_seeds(seed: int, count: int) -> List[int]:
    """``count`` independent 32-bit seeds derived from ``seed``."""
    return [int(child.generate_state(1)[0]) for child in np.random.SeedSequence(seed).spawn(count)]


def gnp_no_isolated(n: int, p: float, seed: int) -> Graph:
    """G(n, p) resampled (with derived seeds) until no vertex is isolated."""
    for attempt_seed in instance_seeds(seed, MAX_RESAMPLES):
        nx_graph = nx.gnp_random_graph(n, p, seed=attempt_seed)
        if n == 0 or min(d for _, d in nx_graph.degree()) > 0:
            return Graph.from_networkx(nx_graph)
    raise UsageError(f"G({n}, {p}) kept producing isolated vertices; raise --p")


def random_regular(n: int, degree: int, seed: int) -> Graph:
    d = min(degree, n - 1)
    if (n * d) % 2:
        d -= 1
    return Graph.from_networkx(nx.random_regular_graph(d, n, seed=seed))


def cycle(n: int) -> Graph:
    if n < 3:
        raise UsageError(f"cycles need n >= 3, got {n}")
    return Graph.from_networkx(nx.cycle_graph(n))


def planted_partition(
    n: int, seed: int, p: float = 0.1, degree_cap: Optional[int] = None
) -> Tuple[Graph, List[List[int]]]:
    """
    Yes-instance with a known 3-domatic partition.

    Shuffle the vertices into three balanced parts, add G(n, p) edges (only
    between vertices below ``degree_cap``), then for every vertex v and part P
    with N[v] ∩ P empty add an edge from v to the lowest-degree member of P
    (ties broken at random). Instances over the cap are resampled.

    Returns:
        (graph, parts) with parts 0-indexed.
    """
    if n < 3:
        raise UsageError(f"planted instances need n >= 3, got {n}")
    for attempt_seed in instance_seeds(seed, MAX_RESAMPLES):
        rng = np.random.default_rng(attempt_seed)
        order = rng.permutation(n).tolist()
        part_of = [0] * n
        for position, v in enumerate(order):
            part_of[v] = position % 3
        parts = [[v for v in range(n) if part_of[v] == i] for i in range(3)]

        neighbours = [set() for _ in range(n)]

        def link(u, v):
            neighbours[u].add(v)
            neighbours[v].add(u)

        noise = rng.random((n, n))
        for u in range(n):
            for v in range(u + 1, n):
                if noise[u, v] < p and (
                    degree_cap is None or max(len(neighbours[u]), len(neighbours[v])) < degree_cap
                ):
                    link(u, v)

        for v in range(n):
            for i, part in enumerate(parts):
                if part_of[v] == i or neighbours[v] & set(part):
                    continue
                low = min(len(neighbours[w]) for w in part)
                choices = [w for w in part if len(neighbours[w]) == low]
                link(v, choices[int(rng.integers(len(choices)))])

        g = Graph.from_edges(n, ((u, v) for u in range(n) for v in neighbours[u] if u < v))
        if degree_cap is None or max_degree(g) <= degree_cap:
            return g, parts
    raise UsageError(f"could not plant a partition on n={n} under degree cap {degree_cap}")


def generate_corpus(
    generator: str,
    n_min: int,
    n_max: int,
    count: int = 1,
    seed: int = 0,
    p: float = 0.3,
    degree: int = 3,
) -> List[Tuple[str, Graph]]:
    """
    ``count`` instances for every n in n_min..n_max. For ``planted``, ``p`` is
    the noise edge probability and ``degree`` the degree cap.
    """
    corpus = []
    sizes = range(n_min, n_max + 1)
    seeds = iter(instance_seeds(seed, len(sizes) * count))
    for n in sizes:
        for i in range(count):
            s = next(seeds)
            if generator == "gnp":
                g = gnp_no_isolated(n, p, s)
            elif generator == "regular":
                g = random_regular(n, degree, s)
            elif generator == "cycle":
                g = cycle(n)
            elif generator == "planted":
                g, _parts = planted_partition(n, s, p=p, degree_cap=degree)
            else:
                raise UsageError(f"unknown generator {generator!r}")
            corpus.append((f"{generator}-n{n}-{i}", g))
    logger.info(f"Corpus: {len(corpus)} {generator} instances, n={n_min}..{n_max}, seed={seed}")
    return corpus
