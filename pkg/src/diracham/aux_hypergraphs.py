"""Explicit auxiliary hypergraphs for the expander-building games.

The vertex set of every auxiliary hypergraph is the edge set of the host
graph; claiming a hyperedge's worth of graph edges corresponds to defeating
one potential expansion violation:

  H1: for each vertex set X of size i and each 2ri-subset J of [3ri] index
      blocks, the graph edges from X into the block union minus X - hitting
      every such hyperedge forces |N(X)| > r|X| in the hitter's graph.
  H2: for each (X, Y) with |X| = x and |Y| = y, the edges from X into
      Y \\ X - hitting all of them forces large-set neighborhoods.
  H3: for each disjoint near-half pair (X, Y), every subset of the crossing
      edge set of size e(X,Y) - 2n - hitting all of them forces more than
      2n crossing edges.

Explicit construction only: boards beyond the caps raise, pointing to the
implicit (goal-checker) route the game engine actually plays at scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import BudgetError, DomainError
from .games import WinningFamily, graph_board
from .graph import Graph

EXPLICIT_MAX_N = 10
EXPLICIT_MAX_HYPEREDGES = 200_000


@dataclass
class AuxBuildReport:
    family: WinningFamily
    hyperedge_count: int
    min_hyperedge_size: int
    size_guarantee: Optional[float]
    slack_violations: int


def _edge_index(G: Graph) -> dict[tuple[int, int], int]:
    return {e: i for i, e in enumerate(G.edges())}


def _guard(n: int, count: int) -> None:
    if n > EXPLICIT_MAX_N:
        raise BudgetError(
            f"explicit auxiliary hypergraphs capped at n <= {EXPLICIT_MAX_N}; "
            "use the implicit goal-checker route for larger boards"
        )
    if count > EXPLICIT_MAX_HYPEREDGES:
        raise BudgetError(
            f"would enumerate {count} hyperedges (> {EXPLICIT_MAX_HYPEREDGES}); "
            "tighten the parameters"
        )


def index_blocks(n: int, ell: int) -> list[tuple[int, ...]]:
    """V_{ell,1..ell}: fixed disjoint vertex blocks of size floor(n/ell), in
    id order (deterministic)."""
    if ell < 1:
        raise DomainError("block count must be >= 1")
    size = n // ell
    if size == 0:
        return []
    return [tuple(range(j * size, (j + 1) * size)) for j in range(ell)]


def build_h1(G: Graph, i: int, r: int, epsilon: float) -> AuxBuildReport:
    """Hyperedges for |X| = i <= eps*n/r against 2ri of 3ri index blocks."""
    n = G.n
    if i < 1:
        raise DomainError("i must be >= 1")
    if i > epsilon * n / r:
        raise DomainError(f"i = {i} exceeds eps*n/r = {epsilon * n / r}")
    ell = 3 * r * i
    blocks = index_blocks(n, ell)
    if len(blocks) < ell:
        raise DomainError(f"blocks of size floor(n/{ell}) are empty at n={n}")
    count = math.comb(n, i) * math.comb(ell, 2 * r * i)
    _guard(n, count)
    eidx = _edge_index(G)
    sets = []
    min_size = None
    slack_violations = 0
    guarantee = n * i / 7
    for X in combinations(range(n), i):
        Xs = set(X)
        for J in combinations(range(ell), 2 * r * i):
            target = set()
            for j in J:
                target.update(blocks[j])
            target -= Xs
            he = set()
            for x in X:
                for w in G.neighbors(x):
                    if w in target:
                        he.add(eidx[(min(x, w), max(x, w))])
            if not he:
                slack_violations += 1
                continue
            sets.append(frozenset(he))
            min_size = len(he) if min_size is None else min(min_size, len(he))
            if len(he) < guarantee:
                slack_violations += 1
    return AuxBuildReport(
        WinningFamily(tuple(sets)), len(sets), min_size or 0, guarantee, slack_violations
    )


def build_h2(G: Graph, x_size: int, y_size: int) -> AuxBuildReport:
    """Hyperedges for every (X, Y) pair with |X| = x_size, |Y| = y_size:
    the G-edges meeting X and Y \\ X."""
    n = G.n
    if not (1 <= x_size <= n and 1 <= y_size <= n):
        raise DomainError("bad set sizes")
    count = math.comb(n, x_size) * math.comb(n, y_size)
    _guard(n, count)
    eidx = _edge_index(G)
    sets = []
    min_size = None
    slack_violations = 0
    for X in combinations(range(n), x_size):
        Xs = set(X)
        for Y in combinations(range(n), y_size):
            tgt = set(Y) - Xs
            he = set()
            for v in X:
                for w in G.neighbors(v):
                    if w in tgt:
                        he.add(eidx[(min(v, w), max(v, w))])
            if not he:
                slack_violations += 1
                continue
            sets.append(frozenset(he))
            min_size = len(he) if min_size is None else min(min_size, len(he))
    return AuxBuildReport(
        WinningFamily(tuple(sets)), len(sets), min_size or 0, None, slack_violations
    )


def build_h3(G: Graph, epsilon: float) -> AuxBuildReport:
    """For each disjoint pair with both sides of size >=
    ceil((1/2 - eps^{1/5}) n): all subsets of the crossing edges of size
    e(X,Y) - 2n.  Pairs with e(X,Y) <= 2n contribute nothing."""
    n = G.n
    thr = max(1, math.ceil((0.5 - epsilon**0.2) * n - 1e-12))
    if 2 * thr > n:
        return AuxBuildReport(WinningFamily(()), 0, 0, None, 0)
    eidx = _edge_index(G)
    sets = []
    min_size = None
    total = 0
    for sx in range(thr, n - thr + 1):
        for X in combinations(range(n), sx):
            Xs = set(X)
            rest = [v for v in range(n) if v not in Xs]
            for sy in range(thr, len(rest) + 1):
                for Y in combinations(rest, sy):
                    exy = set()
                    for v in X:
                        for w in G.neighbors(v):
                            if w in Y:
                                exy.add(eidx[(min(v, w), max(v, w))])
                    keep = len(exy) - 2 * n
                    if keep <= 0:
                        continue
                    total += math.comb(len(exy), keep)
                    _guard(n, total)
                    for S in combinations(sorted(exy), keep):
                        sets.append(frozenset(S))
                        min_size = keep if min_size is None else min(min_size, keep)
    return AuxBuildReport(WinningFamily(tuple(sets)), len(sets), min_size or 0, None, 0)


def aux_hypergraphs(G: Graph, kind: str, params: dict) -> AuxBuildReport:
    """Dispatch: kind in {"H1", "H2", "H3"} with the per-kind parameters."""
    if kind == "H1":
        return build_h1(G, params["i"], params["r"], params["epsilon"])
    if kind == "H2":
        return build_h2(G, params["x_size"], params["y_size"])
    if kind == "H3":
        return build_h3(G, params["epsilon"])
    raise DomainError(f"unknown auxiliary hypergraph kind {kind!r}")
