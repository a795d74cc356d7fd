"""Exact Hamiltonicity decisions by backtracking, for cross-checking the
rotation engine on small instances (n <= 20)."""

from __future__ import annotations

from .errors import BudgetError
from .graph import Graph, is_connected

ORACLE_MAX_N = 20


def _check_size(G: Graph):
    if G.n > ORACLE_MAX_N:
        raise BudgetError(f"oracle limited to n <= {ORACLE_MAX_N}, got n={G.n}")


def hamilton_cycle(G: Graph) -> tuple[int, ...] | None:
    """A Hamilton cycle of G, or None if none exists.  Exact."""
    _check_size(G)
    n = G.n
    if n < 3 or min(G.degrees(), default=0) < 2 or not is_connected(G):
        return None
    # anchor at 0; prune with a connectivity test on the unvisited remainder
    path = [0]
    visited = [False] * n
    visited[0] = True

    def remainder_ok(cur: int) -> bool:
        # unvisited vertices plus the two path ends must stay connected and
        # every unvisited vertex needs >= 2 unvisited-or-end neighbors
        remaining = [v for v in range(n) if not visited[v]]
        if not remaining:
            return True
        allowed = set(remaining)
        allowed.add(cur)
        allowed.add(0)
        seen = {remaining[0]}
        stack = [remaining[0]]
        while stack:
            x = stack.pop()
            for y in G.neighbors(x):
                if y in allowed and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if any(v not in seen for v in remaining):
            return False
        for v in remaining:
            links = sum(1 for y in G.neighbors(v) if y in allowed)
            if links < 2:
                return False
        return True

    def dfs(cur: int, depth: int) -> bool:
        if depth == n:
            return G.has_edge(cur, 0)
        if not remainder_ok(cur):
            return False
        for w in G.neighbors(cur):
            if not visited[w]:
                visited[w] = True
                path.append(w)
                if dfs(w, depth + 1):
                    return True
                path.pop()
                visited[w] = False
        return False

    if dfs(0, 1):
        return tuple(path)
    return None


def is_hamiltonian(G: Graph) -> bool:
    return hamilton_cycle(G) is not None


def hamilton_path_between(G: Graph, u: int, v: int) -> tuple[int, ...] | None:
    """A Hamilton path from u to v, or None.  Exact."""
    _check_size(G)
    n = G.n
    if u == v or not (0 <= u < n and 0 <= v < n):
        return None
    if n == 1:
        return None
    path = [u]
    visited = [False] * n
    visited[u] = True

    def dfs(cur: int, depth: int) -> bool:
        if depth == n:
            return cur == v
        remaining = [x for x in range(n) if not visited[x]]
        allowed = set(remaining)
        allowed.add(cur)
        allowed.add(v)
        if remaining:
            seen = {remaining[0]}
            stack = [remaining[0]]
            while stack:
                x = stack.pop()
                for y in G.neighbors(x):
                    if y in allowed and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if any(x not in seen for x in remaining):
                return False
        for w in G.neighbors(cur):
            if not visited[w] and (w != v or depth == n - 1):
                visited[w] = True
                path.append(w)
                if dfs(w, depth + 1):
                    return True
                path.pop()
                visited[w] = False
        return False

    if dfs(u, 1):
        return tuple(path)
    return None


def is_hamilton_connected(G: Graph) -> bool:
    """Every vertex pair joined by a Hamilton path.  Exact, small n only."""
    _check_size(G)
    return all(
        hamilton_path_between(G, u, v) is not None
        for u in range(G.n)
        for v in range(u + 1, G.n)
    )
