"""Constructed graph families used across tests, demos and experiments.

The structured Dirac families here are the instances whose behaviour the
engine's experiments are anchored on: complete graphs, complete bipartite
graphs, and two cliques joined by a perfect matching (Dirac) or a single
bridge (minimum degree n/2 - 1, the classical near-miss).
"""

from __future__ import annotations

import random

from .graph import Graph


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) if i + 1 < n else (0, n - 1) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center at id 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}; side A is 0..a-1, side B is a..a+b-1."""
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def two_cliques_bridge(n: int) -> Graph:
    """Two disjoint K_{n/2} joined by the single edge {n/2-1, n/2}.

    Minimum degree n/2 - 1: not Dirac, not Hamiltonian; the standard
    tightness example for the minimum-degree condition.
    """
    if n % 2 != 0 or n < 4:
        raise ValueError("two_cliques_bridge needs even n >= 4")
    h = n // 2
    edges = [(u, v) for u in range(h) for v in range(u + 1, h)]
    edges += [(h + u, h + v) for u in range(h) for v in range(u + 1, h)]
    edges.append((h - 1, h))
    return Graph(n, edges)


def two_cliques_matching(n: int) -> Graph:
    """Two disjoint K_{n/2} joined by the perfect matching i <-> n/2 + i.

    Minimum degree exactly n/2: a Dirac graph with a sparse (n/2)-edge cut.
    """
    if n % 2 != 0 or n < 4:
        raise ValueError("two_cliques_matching needs even n >= 4")
    h = n // 2
    edges = [(u, v) for u in range(h) for v in range(u + 1, h)]
    edges += [(h + u, h + v) for u in range(h) for v in range(u + 1, h)]
    edges += [(i, h + i) for i in range(h)]
    return Graph(n, edges)


def disjoint_cliques(n: int) -> Graph:
    """Two disjoint K_{n/2}: minimum degree n/2 - 1 and disconnected."""
    if n % 2 != 0 or n < 4:
        raise ValueError("disjoint_cliques needs even n >= 4")
    h = n // 2
    edges = [(u, v) for u in range(h) for v in range(u + 1, h)]
    edges += [(h + u, h + v) for u in range(h) for v in range(u + 1, h)]
    return Graph(n, edges)


def petersen_graph() -> Graph:
    """The Petersen graph: hypotraceable control case (no Hamilton cycle)."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    return Graph(n, edges)


def random_dirac_graph(n: int, seed: int, base_p: float | None = None) -> Graph:
    """Seeded random graph with minimum degree >= ceil(n/2).

    Samples G(n, p) and then adds random edges at deficient vertices until
    2*delta >= n.  Deterministic given (n, seed).
    """
    if n < 3:
        raise ValueError("random_dirac_graph needs n >= 3")
    rng = random.Random(seed)
    p = base_p if base_p is not None else rng.uniform(0.5, 0.85)
    adj = [set() for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                adj[u].add(v)
                adj[v].add(u)
    need = (n + 1) // 2
    for u in range(n):
        while len(adj[u]) < need:
            candidates = [v for v in range(n) if v != u and v not in adj[u]]
            # prefer raising two deficient degrees at once
            deficient = [v for v in candidates if len(adj[v]) < need]
            v = rng.choice(deficient if deficient else candidates)
            adj[u].add(v)
            adj[v].add(u)
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    return Graph(n, edges)
