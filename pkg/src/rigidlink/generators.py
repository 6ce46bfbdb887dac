"""Seeded random graph families used by tests, benchmarks and the acceptance suite."""

from __future__ import annotations

import random
from itertools import combinations

from .graph import Graph


def random_graph(n: int, p: float, seed=None) -> Graph:
    rng = random.Random(seed)
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_rigid_graph(n: int, seed=None, p_three: float = 0.5, extra: int = 0) -> Graph:
    """Rigid graph grown from a triangle by vertex additions.

    Each new vertex is joined to 3 random earlier vertices with probability
    ``p_three`` and to 2 otherwise (degree-2 additions keep rigidity), then
    ``extra`` random non-edges are added.
    """
    if n < 2:
        return Graph(n)
    rng = random.Random(seed)
    edges = {(0, 1)} if n == 2 else {(0, 1), (0, 2), (1, 2)}
    for v in range(3, n):
        k = 3 if rng.random() < p_three else 2
        for w in rng.sample(range(v), k):
            edges.add((w, v))
    target = len(edges) + extra
    limit = n * (n - 1) // 2
    while len(edges) < min(target, limit):
        a, b = sorted(rng.sample(range(n), 2))
        edges.add((a, b))
    return Graph(n, edges)
