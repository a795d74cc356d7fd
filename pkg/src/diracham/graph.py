"""Immutable undirected simple graphs with the counting primitives the engine
lives on.

Vertices are dense integer ids 0..n-1; external labels must be mapped at
ingestion.  A Graph is a value: every derived graph (induced subgraph, random
subgraph, Maker's claimed graph, ...) is a new Graph, so graphs can be shared
freely between searches and game tasks.

Conventions:
  * pair_count(G, X, Y) counts ordered pairs (x, y) with x in X, y in Y and
    {x, y} an edge, so pair_count(G, X, X) = 2 * (edges inside X).
  * neighborhood(G, X) is the set of vertices adjacent to some vertex of X
    and may intersect X.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

from .errors import DomainError, GraphFormatError, InvalidSetError


class Graph:
    """Undirected simple graph on vertices 0..n-1, immutable after construction."""

    __slots__ = ("n", "m", "_adj_sets", "_adj_sorted", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphFormatError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        edge_list: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphFormatError(f"duplicate edge {key}")
            seen.add(key)
            edge_list.append(key)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.m = len(edge_list)
        self._adj_sets = tuple(frozenset(s) for s in adj)
        self._adj_sorted = tuple(tuple(sorted(s)) for s in adj)
        self._edges = tuple(sorted(edge_list))

    # -- basic views ---------------------------------------------------

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbors of v in increasing order (deterministic iteration)."""
        return self._adj_sorted[v]

    def neighbor_set(self, v: int) -> frozenset:
        return self._adj_sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u] if 0 <= u < self.n else False

    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as (u, v) with u < v, sorted lexicographically."""
        return self._edges

    def degree(self, v: int) -> int:
        return len(self._adj_sets[v])

    def degrees(self) -> list[int]:
        return [len(s) for s in self._adj_sets]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._edges == other._edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def check_vertex_set(G: Graph, X: Iterable[int]) -> frozenset:
    """Validate X as a vertex set of G and return it as a frozenset."""
    Xs = frozenset(X)
    for v in Xs:
        if not (isinstance(v, int) and 0 <= v < G.n):
            raise InvalidSetError(f"vertex {v!r} out of range for n={G.n}")
    return Xs


# -- counting / neighborhood primitives --------------------------------


def pair_count(G: Graph, X: Iterable[int], Y: Iterable[int]) -> int:
    """e(X, Y): ordered pairs (x, y), x in X, y in Y, {x,y} an edge."""
    Xs = check_vertex_set(G, X)
    Ys = check_vertex_set(G, Y)
    if len(Xs) > len(Ys):
        Xs, Ys = Ys, Xs
    return sum(len(G.neighbor_set(x) & Ys) for x in Xs)


def neighborhood(G: Graph, X: Iterable[int]) -> frozenset:
    """N(X): vertices adjacent to at least one vertex of X (may meet X)."""
    Xs = check_vertex_set(G, X)
    out: set[int] = set()
    for x in Xs:
        out |= G.neighbor_set(x)
    return frozenset(out)


def min_degree(G: Graph) -> int:
    if G.n == 0:
        raise DomainError("min_degree undefined for the empty graph")
    return min(G.degrees())


def max_degree(G: Graph) -> int:
    if G.n == 0:
        return 0
    return max(G.degrees())


def is_dirac(G: Graph) -> bool:
    """True iff 2*delta(G) >= n.  Requires n >= 3."""
    if G.n < 3:
        raise DomainError(f"is_dirac needs n >= 3, got n={G.n}")
    return 2 * min_degree(G) >= G.n


def induced_subgraph(G: Graph, X: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """G[X] with vertices relabeled 0..|X|-1.

    Returns (graph, relabel) where relabel maps original id -> new id.
    """
    Xs = check_vertex_set(G, X)
    if not Xs:
        raise InvalidSetError("induced_subgraph needs a nonempty vertex set")
    order = sorted(Xs)
    relabel = {v: i for i, v in enumerate(order)}
    edges = [
        (relabel[u], relabel[v])
        for (u, v) in G.edges()
        if u in Xs and v in Xs
    ]
    return Graph(len(order), edges), relabel


# -- Hamiltonicity certificates -----------------------------------------


def verify_hamilton_cycle(G: Graph, seq: Sequence[int]) -> bool:
    """True iff seq is a permutation of 0..n-1 and consecutive pairs
    (cyclically) are all edges.  Malformed input returns False."""
    try:
        vs = list(seq)
    except TypeError:
        return False
    if G.n < 3 or len(vs) != G.n or set(vs) != set(range(G.n)):
        return False
    return all(G.has_edge(vs[i], vs[(i + 1) % G.n]) for i in range(G.n))


def verify_hamilton_path(G: Graph, seq: Sequence[int]) -> bool:
    """True iff seq is a permutation of 0..n-1 and consecutive pairs are edges."""
    try:
        vs = list(seq)
    except TypeError:
        return False
    if len(vs) != G.n or set(vs) != set(range(G.n)):
        return False
    return all(G.has_edge(vs[i], vs[i + 1]) for i in range(G.n - 1))


def verify_cycle(G: Graph, seq: Sequence[int]) -> bool:
    """A (not necessarily spanning) cycle: distinct vertices, cyclic edges."""
    vs = list(seq)
    if len(vs) < 3 or len(set(vs)) != len(vs):
        return False
    return all(G.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))


# -- connectivity helper -------------------------------------------------


def connected_components(G: Graph) -> list[list[int]]:
    seen = [False] * G.n
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in G.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(connected_components(G)) == 1


# -- file formats ---------------------------------------------------------
#
# Text format: first line "n m", then m lines "u v" with 0-based u < v.
# JSON format: {"n": int, "edges": [[u, v], ...]}.
# Both reject loops and duplicate edges (Graph's constructor enforces it).


def parse_graph_text(text: str) -> Graph:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise GraphFormatError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError(f"expected header 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphFormatError(f"bad header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header says m={m} but {len(lines) - 1} edge lines")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"bad edge line {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"bad edge line {ln!r}") from exc
        if not u < v:
            raise GraphFormatError(f"edge line {ln!r} must have u < v")
        edges.append((u, v))
    return Graph(n, edges)


def parse_graph_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"bad JSON: {exc}") from exc
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphFormatError('JSON graph needs keys "n" and "edges"')
    edges = [tuple(e) for e in obj["edges"]]
    if any(len(e) != 2 for e in edges):
        raise GraphFormatError("each edge must be a pair [u, v]")
    return Graph(int(obj["n"]), edges)


def load_graph(path: str) -> Graph:
    """Load a graph file, dispatching on a leading '{' to the JSON parser."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return parse_graph_json(text)
    return parse_graph_text(text)


def dump_graph_text(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def dump_graph_json(G: Graph) -> str:
    return json.dumps({"n": G.n, "edges": [list(e) for e in G.edges()]})
