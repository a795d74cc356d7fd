"""Posa rotation-extension over general graphs.

A rotation takes a path P = (v_0, ..., v_l) and an edge from one endpoint
back into the path, breaks the path edge just beyond the pivot, and produces
a new path on the same vertex set with a new endpoint.  Iterating rotations
from a maximal path yields the endpoint sets S_P (new start points with the
far endpoint pinned) and T_v (far endpoints with the start pinned at v), and
any graph edge between S_P and some T_v closes a cycle that either spans the
graph or re-opens into a longer path.

Paths here need not be subgraphs of the searched graph: rotations may also
use the edges of the path's own origin sequence, which is how a virtual
fixed edge supports Hamilton-connectivity searches.

Orientation conventions:
  * rotate() pivots from the seq[-1] end (seq[0] stays fixed), matching the
    classical picture P' = (v_0, ..., v_i, v_l, ..., v_{i+1}).
  * Endpoint-atlas entries are oriented from the reached endpoint to the
    pinned endpoint, so every stored path ends at the atlas' fixed end.
  * Reversal and extension re-root a path: `origin` is always the sequence
    the rotation log replays from.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Optional

from .errors import DomainError, PreconditionError
from .graph import Graph, verify_hamilton_cycle

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _seq_edges(seq: tuple[int, ...]) -> frozenset:
    return frozenset(_norm(seq[i], seq[i + 1]) for i in range(len(seq) - 1))


@dataclass
class PathState:
    """A path plus its rotation history.

    seq: the current vertex sequence (no repeats).
    fixed_edge: an edge (as a sorted pair) that must survive every rotation,
        or None.  It must occur as a consecutive pair of seq.
    rotations: log of (pivot vertex, broken edge) in creation order.
    origin: the sequence the log replays from (re-rooted on extension or
        reversal).
    """

    seq: tuple[int, ...]
    fixed_edge: Optional[Edge] = None
    rotations: tuple[tuple[int, Edge], ...] = ()
    origin: tuple[int, ...] = ()

    def __post_init__(self):
        self.seq = tuple(self.seq)
        if not self.origin:
            self.origin = self.seq
        if self.fixed_edge is not None:
            self.fixed_edge = _norm(*self.fixed_edge)

    @property
    def length(self) -> int:
        return len(self.seq) - 1

    def endpoints(self) -> tuple[int, int]:
        return self.seq[0], self.seq[-1]

    def edge_set(self) -> frozenset:
        return _seq_edges(self.seq)

    def origin_edges(self) -> frozenset:
        return _seq_edges(self.origin)

    def reversed(self) -> "PathState":
        """The same path walked backwards, re-rooted (fresh origin, empty log)."""
        rev = tuple(reversed(self.seq))
        return PathState(seq=rev, fixed_edge=self.fixed_edge, origin=rev)


def check_path_state(G: Graph, ps: PathState) -> None:
    """Raise if ps violates its invariants relative to G."""
    seq = ps.seq
    if len(set(seq)) != len(seq):
        raise PreconditionError("path repeats a vertex")
    allowed = ps.origin_edges()
    for i in range(len(seq) - 1):
        e = _norm(seq[i], seq[i + 1])
        if not G.has_edge(*e) and e not in allowed:
            raise PreconditionError(f"pair {e} is neither a graph nor an origin edge")
    if ps.fixed_edge is not None and ps.fixed_edge not in _seq_edges(seq):
        raise PreconditionError(f"fixed edge {ps.fixed_edge} not on the path")
    if replay(ps) != seq:
        raise PreconditionError("rotation log does not replay to seq")


def replay(ps: PathState) -> tuple[int, ...]:
    """Re-apply the rotation log to the origin sequence.

    Each log entry (pivot, broken) identifies a unique rotation: the broken
    edge is the path edge just after the pivot (pivot from the seq[-1] end)
    or just before it (pivot from the seq[0] end).  Raises if an entry does
    not fit the current sequence, including when a logged edge was not
    consecutive at its time or survives its own break.
    """
    cur = tuple(ps.origin)
    for pivot, broken in ps.rotations:
        broken = _norm(*broken)
        m = cur.index(pivot)
        if m + 1 < len(cur) and _norm(cur[m], cur[m + 1]) == broken:
            cur = cur[: m + 1] + tuple(reversed(cur[m + 1 :]))
        elif m >= 1 and _norm(cur[m - 1], cur[m]) == broken:
            cur = tuple(reversed(cur[:m])) + cur[m:]
        else:
            raise PreconditionError(
                f"logged broken edge {broken} not consecutive at pivot {pivot}"
            )
        if broken in _seq_edges(cur):
            raise PreconditionError(f"broken edge {broken} still on the path")
    return cur


def rotate(ps: PathState, G: Graph, pivot_index: int) -> PathState:
    """Rotation pivoting from the seq[-1] end; seq[0] stays fixed.

    New path (v_0, ..., v_i, v_l, ..., v_{i+1}) with new endpoint v_{i+1}.
    Requires 0 <= i <= l-2, the pivot edge {v_l, v_i} in G or the origin,
    and that the broken edge {v_i, v_{i+1}} is not the fixed edge.
    """
    seq = ps.seq
    ell = len(seq) - 1
    i = pivot_index
    if not 0 <= i <= ell - 2:
        raise PreconditionError(
            f"pivot index {i} out of range 0..{ell - 2} (i = l-1 is a no-op and rejected)"
        )
    pivot_edge = _norm(seq[-1], seq[i])
    if not G.has_edge(*pivot_edge) and pivot_edge not in ps.origin_edges():
        raise PreconditionError(f"pivot edge {pivot_edge} absent from G and origin")
    broken = _norm(seq[i], seq[i + 1])
    if broken == ps.fixed_edge:
        raise PreconditionError(f"rotation would break the fixed edge {broken}")
    new_seq = seq[: i + 1] + tuple(reversed(seq[i + 1 :]))
    return replace(
        ps,
        seq=new_seq,
        rotations=ps.rotations + ((seq[i], broken),),
    )


def _rotate_head(ps: PathState, allowed_extra: frozenset, G: Graph, m: int) -> PathState:
    """Rotation pivoting from the seq[0] end; seq[-1] stays pinned.

    Mirror of rotate(): new path (v_{m-1}, ..., v_0, v_m, ..., v_l) with new
    endpoint v_{m-1}; breaks {v_{m-1}, v_m}; requires 2 <= m <= l.
    """
    seq = ps.seq
    new_seq = tuple(reversed(seq[:m])) + seq[m:]
    broken = _norm(seq[m - 1], seq[m])
    return replace(ps, seq=new_seq, rotations=ps.rotations + ((seq[m], broken),))


# -- extend / close -------------------------------------------------------


@dataclass(frozen=True)
class ExtendOrClose:
    kind: str  # "extended" | "closed" | "stuck"
    path: Optional[PathState] = None
    cycle: Optional[tuple[int, ...]] = None


def _extension_vertex(G: Graph, seq: tuple[int, ...], end: int) -> Optional[int]:
    on_path = set(seq)
    for w in G.neighbors(end):
        if w not in on_path:
            return w
    return None


def _reopen_cycle(
    G: Graph, seq: tuple[int, ...], fixed_edge: Optional[Edge]
) -> Optional[tuple[int, ...]]:
    """Open the cycle (seq, cyclically closed) at a vertex with an off-cycle
    neighbor and return the extended sequence, or None."""
    L = len(seq)
    on_path = set(seq)
    for j, v in enumerate(seq):
        w = _extension_vertex(G, seq, v)
        if w is None:
            continue
        nxt = seq[(j + 1) % L]
        prv = seq[(j - 1) % L]
        if _norm(v, nxt) != fixed_edge:
            # path from nxt around the cycle back to v, then w
            new = tuple(seq[(j + 1 + t) % L] for t in range(L)) + (w,)
        elif _norm(prv, v) != fixed_edge:
            new = tuple(seq[(j - 1 - t) % L] for t in range(L)) + (w,)
        else:
            continue
        return new
    return None


def extend_or_close(G: Graph, ps: PathState) -> ExtendOrClose:
    """One step of the extension side of rotation-extension.

    Extended: some endpoint has an off-path neighbor (path grows by one), or
    a non-spanning cycle closed and re-opened through an off-cycle neighbor
    (the connectivity step).  Closed: the closing edge exists and the cycle
    covers everything it can reach.  Stuck: neither.
    """
    seq = ps.seq
    w = _extension_vertex(G, seq, seq[-1])
    if w is not None:
        new_seq = seq + (w,)
        return ExtendOrClose(
            "extended", PathState(seq=new_seq, fixed_edge=ps.fixed_edge, origin=new_seq)
        )
    w = _extension_vertex(G, seq, seq[0])
    if w is not None:
        new_seq = (w,) + seq
        return ExtendOrClose(
            "extended", PathState(seq=new_seq, fixed_edge=ps.fixed_edge, origin=new_seq)
        )
    closing = _norm(seq[0], seq[-1])
    if len(seq) >= 3 and (G.has_edge(*closing) or closing in ps.origin_edges()):
        if len(seq) == G.n:
            return ExtendOrClose("closed", cycle=seq)
        reopened = _reopen_cycle(G, seq, ps.fixed_edge)
        if reopened is not None:
            return ExtendOrClose(
                "extended",
                PathState(seq=reopened, fixed_edge=ps.fixed_edge, origin=reopened),
            )
        return ExtendOrClose("closed", cycle=seq)
    return ExtendOrClose("stuck")


# -- endpoint atlas -------------------------------------------------------


@dataclass
class EndpointAtlas:
    """Endpoints reachable by rotations of one maximal path.

    reached maps each endpoint v in S_P to one witness path oriented from v
    to the pinned endpoint fixed_end.  T maps v to the analogous closure of
    the other end (witnesses oriented from the reached far endpoint w to v);
    it is filled lazily by t_for().
    """

    fixed_end: int
    reached: dict[int, PathState]
    source: PathState
    T: dict[int, dict[int, PathState]] = field(default_factory=dict)

    @property
    def S_P(self) -> frozenset:
        return frozenset(self.reached)

    def t_for(self, G: Graph, v: int) -> dict[int, PathState]:
        if v not in self.reached:
            raise PreconditionError(f"{v} not in S_P")
        if v not in self.T:
            root = self.reached[v].reversed()
            self.T[v] = _closure(G, root)
        return self.T[v]


def _closure(
    G: Graph,
    root: PathState,
    pivot_ok: Optional[Callable[[int], bool]] = None,
    max_steps: Optional[int] = None,
) -> dict[int, PathState]:
    """Breadth-first single-witness closure over head rotations.

    The seq[-1] end of root stays pinned; returns endpoint -> witness path
    (oriented endpoint .. pinned).  Deterministic: FIFO order, pivots tried
    in increasing position.
    """
    allowed_extra = root.origin_edges()
    cap = max_steps if max_steps is not None else 4 * G.n * G.n
    reached = {root.seq[0]: root}
    queue = [root.seq[0]]
    steps = 0
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        ps = reached[u]
        seq = ps.seq
        head = seq[0]
        head_nbrs = G.neighbor_set(head)
        for m in range(2, len(seq)):
            pivot = seq[m]
            if pivot_ok is not None and not pivot_ok(pivot):
                continue
            e = _norm(head, pivot)
            if pivot not in head_nbrs and e not in allowed_extra:
                continue
            broken = _norm(seq[m - 1], seq[m])
            if broken == ps.fixed_edge:
                continue
            new_head = seq[m - 1]
            if new_head in reached:
                continue
            steps += 1
            if steps > cap:
                raise RuntimeError("rotation closure exceeded its step cap")
            reached[new_head] = _rotate_head(ps, allowed_extra, G, m)
            queue.append(new_head)
    return reached


def endpoint_closure(G: Graph, ps: PathState, compute_T: bool = False) -> EndpointAtlas:
    """S_P (and on request every T_v) for a maximal path.

    Requires that ps cannot be directly extended at either endpoint;
    otherwise the caller should extend first.  The closure fixes the far
    endpoint seq[-1] and rotates the start; S_P always contains seq[0].
    Deterministic and idempotent given G and ps.
    """
    if _extension_vertex(G, ps.seq, ps.seq[-1]) is not None or (
        _extension_vertex(G, ps.seq, ps.seq[0]) is not None
    ):
        raise PreconditionError("path is extendable; extend before taking the closure")
    root = PathState(seq=ps.seq, fixed_edge=ps.fixed_edge, origin=ps.seq)
    reached = _closure(G, root)
    atlas = EndpointAtlas(fixed_end=ps.seq[-1], reached=reached, source=ps)
    if compute_T:
        for v in sorted(reached):
            atlas.t_for(G, v)
    return atlas


# -- randomized search ----------------------------------------------------


@dataclass(frozen=True)
class Budget:
    restarts: int = 50
    max_steps: int = 1_000_000


@dataclass(frozen=True)
class SearchResult:
    cycle: Optional[tuple[int, ...]]
    restarts: int
    steps: int

    @property
    def found(self) -> bool:
        return self.cycle is not None


class _FastPath:
    """Mutable path representation for the search hot loop."""

    __slots__ = ("order", "pos")

    def __init__(self, n: int, start: Iterable[int]):
        self.order = list(start)
        self.pos = [-1] * n
        for i, v in enumerate(self.order):
            self.pos[v] = i

    def append(self, v: int):
        self.pos[v] = len(self.order)
        self.order.append(v)

    def reverse(self):
        self.order.reverse()
        for i, v in enumerate(self.order):
            self.pos[v] = i

    def rotate_tail(self, i: int):
        """In-place (v_0..v_i, v_l..v_{i+1})."""
        seg = self.order[i + 1 :]
        seg.reverse()
        self.order[i + 1 :] = seg
        for j in range(i + 1, len(self.order)):
            self.pos[self.order[j]] = j

    def set_order(self, order: list[int]):
        self.order = list(order)
        for i, v in enumerate(self.order):
            self.pos[v] = i


def _grow_greedy(G, rng, fp: _FastPath, nbr: Callable[[int], tuple]) -> int:
    """Extend both ends with random unvisited neighbors; returns steps used."""
    steps = 0
    grew = True
    while grew:
        grew = False
        for _ in range(2):
            tail = fp.order[-1]
            cand = [w for w in nbr(tail) if fp.pos[w] < 0]
            if cand:
                fp.append(rng.choice(cand))
                steps += 1
                grew = True
            else:
                fp.reverse()
    return steps


def _systematic_pass(G, fp: _FastPath, fixed: Optional[Edge], nbr, has_edge):
    """Closure-based fallback: try rotated-endpoint extension, then a
    Hamilton closing pair, then a non-spanning close-and-reopen.

    Returns ("extend", order) | ("hamilton", cycle) | ("reopen", order) |
    ("dead", None), plus the rotation steps spent.
    """
    n = G.n
    seq = tuple(fp.order)
    root = PathState(seq=seq, fixed_edge=fixed, origin=seq)
    reached = _closure(G, root)
    steps = len(reached)
    on_path = set(seq)
    # extension via a rotated start
    for v in sorted(reached):
        for w in nbr(v):
            if w not in on_path:
                new_order = [w] + list(reached[v].seq)
                return ("extend", new_order), steps
    spanning = len(seq) == n
    for v in sorted(reached):
        tv = _closure(G, reached[v].reversed())
        steps += len(tv)
        for w in sorted(tv):
            if w == v or not has_edge(v, w):
                continue
            cyc = tv[w].seq  # runs w .. v; edge {v, w} closes it
            if spanning:
                return ("hamilton", tuple(cyc)), steps
            reopened = _reopen_cycle(G, tuple(cyc), fixed)
            if reopened is not None:
                return ("reopen", list(reopened)), steps
    return ("dead", None), steps


def _search_cycle(
    G: Graph,
    budget: Budget,
    seed: int,
    fixed: Optional[Edge] = None,
    start_seq: Optional[tuple[int, ...]] = None,
) -> SearchResult:
    """Randomized rotation-extension search for a spanning cycle (containing
    the fixed edge, when one is given)."""
    n = G.n
    rng = random.Random(seed)
    extra = frozenset([fixed]) if fixed is not None else frozenset()

    def nbr(v: int) -> tuple:
        base = G.neighbors(v)
        if fixed is not None and v in fixed:
            o = fixed[0] if v == fixed[1] else fixed[1]
            if o not in G.neighbor_set(v):
                return base + (o,)
        return base

    def has_edge(u: int, v: int) -> bool:
        return G.has_edge(u, v) or _norm(u, v) in extra

    steps = 0
    for restart in range(budget.restarts):
        if steps >= budget.max_steps:
            break
        if start_seq is not None:
            fp = _FastPath(n, start_seq)
        else:
            fp = _FastPath(n, [rng.randrange(n)])
        steps += _grow_greedy(G, rng, fp, nbr)
        stall = 0
        max_stall = 6 * n + 20
        while steps < budget.max_steps:
            tail = fp.order[-1]
            cand = [w for w in nbr(tail) if fp.pos[w] < 0]
            if cand:
                fp.append(rng.choice(cand))
                steps += 1
                stall = 0
                continue
            head = fp.order[0]
            L = len(fp.order)
            if L == n and L >= 3 and has_edge(head, tail):
                return SearchResult(tuple(fp.order), restart + 1, steps)
            if L < n and L >= 3 and has_edge(head, tail):
                reopened = _reopen_cycle(G, tuple(fp.order), fixed)
                if reopened is not None:
                    fp.set_order(list(reopened))
                    steps += 1
                    stall = 0
                    continue
            if stall >= max_stall:
                (kind, payload), used = _systematic_pass(G, fp, fixed, nbr, has_edge)
                steps += used
                if kind == "hamilton":
                    return SearchResult(payload, restart + 1, steps)
                if kind in ("extend", "reopen"):
                    fp.set_order(payload)
                    stall = 0
                    continue
                break  # dead: restart
            # random rotation at the tail end
            pivots = []
            for w in nbr(tail):
                i = fp.pos[w]
                if 0 <= i <= L - 3:
                    broken = _norm(fp.order[i], fp.order[i + 1])
                    if broken != fixed:
                        pivots.append(i)
            if not pivots:
                fp.reverse()
                stall += 1
                continue
            fp.rotate_tail(rng.choice(pivots))
            steps += 1
            stall += 1
    return SearchResult(None, budget.restarts, steps)


def find_hamilton_cycle(
    G: Graph, budget: Optional[Budget] = None, seed: int = 0
) -> SearchResult:
    """Rotation-extension search for a Hamilton cycle.

    NotFound (cycle=None) means the budget ran out, not that no cycle
    exists.  On success the certificate passes verify_hamilton_cycle.
    """
    if G.n < 3:
        raise DomainError(f"Hamilton cycles need n >= 3, got n={G.n}")
    budget = budget or Budget()
    if min(G.degrees()) < 2:
        return SearchResult(None, 0, 0)
    res = _search_cycle(G, budget, seed)
    if res.cycle is not None:
        assert verify_hamilton_cycle(G, res.cycle)
    return res


@dataclass(frozen=True)
class PathSearchResult:
    path: Optional[tuple[int, ...]]
    restarts: int
    steps: int

    @property
    def found(self) -> bool:
        return self.path is not None


def find_path_between(
    G: Graph, u: int, v: int, budget: Optional[Budget] = None, seed: int = 0
) -> PathSearchResult:
    """Hamilton path from u to v via the virtual-fixed-edge construction:
    add e = {u, v}, search a spanning cycle containing e, strip e."""
    if u == v:
        raise DomainError("endpoints must differ")
    budget = budget or Budget()
    n = G.n
    if n == 2:
        ok = G.has_edge(u, v)
        return PathSearchResult((u, v) if ok else None, 0, 0)
    e = _norm(u, v)
    res = _search_cycle(G, budget, seed, fixed=e, start_seq=(u, v))
    if res.cycle is None:
        return PathSearchResult(None, res.restarts, res.steps)
    cyc = list(res.cycle)
    L = len(cyc)
    for j in range(L):
        a, b = cyc[j], cyc[(j + 1) % L]
        if _norm(a, b) == e:
            order = [cyc[(j + 1 + t) % L] for t in range(L)]  # b .. a
            path = tuple(reversed(order)) if order[0] == v else tuple(order)
            if path[0] != u:
                path = tuple(reversed(path))
            return PathSearchResult(path, res.restarts, res.steps)
    return PathSearchResult(None, res.restarts, res.steps)


def sample_re_ratio(
    G: Graph, trials: int = 20, seed: int = 0
) -> list[float]:
    """|S_P| / n over sampled maximal paths (stuck under direct extension).

    Evidence about the rotation-expansion property of G, never a
    certificate: the property quantifies over all paths.
    """
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        fp = _FastPath(G.n, [rng.randrange(G.n)])
        _grow_greedy(G, rng, fp, G.neighbors)
        ps = PathState(seq=tuple(fp.order))
        atlas = endpoint_closure(G, ps)
        out.append(len(atlas.S_P) / G.n)
    return out
