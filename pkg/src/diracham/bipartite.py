"""Special frames, matched frames, proper paths, and the bipartite variant
of rotation-extension.

A special frame splits V into V1 and V2 with |V1| = |V2| + k and designates
k vertex-disjoint edges inside V1 (the special edges), one endpoint of each
being a special vertex.  A matched frame adds a perfect matching f between
V1' = V1 minus the special vertices and V2.  Proper paths use only crossing
edges and special edges, carry each on-path special vertex's edge, and keep
V1' occupancy equal to the f-image of V2 occupancy; they always run from a
V2 endpoint to a V1 endpoint.

Rotations of proper paths pivot only at V1'' (vertices on no special edge),
which is exactly what keeps special edges unbroken, and they always produce
proper paths, so the closure's S_P lives in V2 and every T_v in V1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError, HallViolationError, PreconditionError
from .graph import Graph, check_vertex_set
from .rotation import Budget, PathState, _closure, _norm

Edge = tuple[int, int]


# -- Hall matching ---------------------------------------------------------


def hall_matching(G: Graph, left, right) -> dict[int, int]:
    """Perfect matching between equal-sized left and right using G's edges.

    Returns the matching as a symmetric dict (both directions).  Raises
    HallViolationError carrying a violating set X (|N(X) cap right| < |X|)
    when no perfect matching exists.
    """
    L = sorted(check_vertex_set(G, left))
    R = check_vertex_set(G, right)
    if len(L) != len(R):
        raise DomainError(f"side sizes differ: {len(L)} vs {len(R)}")
    if set(L) & R:
        raise DomainError("left and right overlap")
    match_r: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for w in G.neighbors(u):
            if w in R and w not in seen:
                seen.add(w)
                if w not in match_r or augment(match_r[w], seen):
                    match_r[w] = u
                    return True
        return False

    unmatched = [u for u in L if not augment(u, set())]
    if unmatched:
        # all unmatched lefts plus their alternating reach: |N(X)| < |X|
        violator = set(unmatched)
        frontier = list(unmatched)
        while frontier:
            x = frontier.pop()
            for w in G.neighbors(x):
                if w in R and w in match_r and match_r[w] not in violator:
                    violator.add(match_r[w])
                    frontier.append(match_r[w])
        raise HallViolationError(frozenset(violator))
    out = {}
    for w, u in match_r.items():
        out[u] = w
        out[w] = u
    return out


# -- frames ---------------------------------------------------------------


@dataclass(frozen=True)
class SpecialFrame:
    V1: frozenset
    V2: frozenset
    S_V: frozenset
    S_E: tuple[Edge, ...]

    @property
    def k(self) -> int:
        return len(self.S_E)

    @property
    def V1_prime(self) -> frozenset:
        return self.V1 - self.S_V

    @property
    def V1_dprime(self) -> frozenset:
        used = {v for e in self.S_E for v in e}
        return self.V1 - used

    def special_edge_of(self, v: int) -> Optional[Edge]:
        for e in self.S_E:
            if v in e:
                return e
        return None


def build_special_frame(
    G: Graph, V1, V2, special_edges, special_vertices=None
) -> SpecialFrame:
    """Validate and build a special frame; the special vertex of each edge
    defaults to its lexicographically smaller endpoint."""
    V1 = check_vertex_set(G, V1)
    V2 = check_vertex_set(G, V2)
    if V1 & V2 or V1 | V2 != frozenset(range(G.n)):
        raise DomainError("V1, V2 must partition the vertex set")
    S_E = tuple(sorted(_norm(*e) for e in special_edges))
    k = len(S_E)
    if len(V1) != len(V2) + k:
        raise DomainError(f"|V1| = |V2| + k required: {len(V1)} vs {len(V2)} + {k}")
    used: set[int] = set()
    for e in S_E:
        if not G.has_edge(*e):
            raise DomainError(f"special edge {e} not in G")
        if not (e[0] in V1 and e[1] in V1):
            raise DomainError(f"special edge {e} not inside V1")
        if e[0] in used or e[1] in used:
            raise DomainError(f"special edges share vertex in {e}")
        used.update(e)
    if special_vertices is None:
        S_V = frozenset(min(e) for e in S_E)
    else:
        S_V = check_vertex_set(G, special_vertices)
        if len(S_V) != k:
            raise DomainError("need exactly k special vertices")
        for e in S_E:
            if len(S_V & set(e)) != 1:
                raise DomainError(f"special edge {e} needs exactly one special vertex")
    return SpecialFrame(V1, V2, S_V, S_E)


@dataclass(frozen=True)
class MatchedFrame:
    frame: SpecialFrame
    f: dict[int, int] = field(hash=False)

    def partner(self, v: int) -> int:
        return self.f[v]


def build_matched_frame(G: Graph, V1, V2, special_edges) -> MatchedFrame:
    """Special frame plus a Hall matching between V1' and V2.

    Special-vertex choice: lexicographically smaller endpoint of each
    special edge.  Hall violations propagate with their witness.
    """
    frame = build_special_frame(G, V1, V2, special_edges)
    f = hall_matching(G, frame.V1_prime, frame.V2)
    for v in frame.V1_prime:
        assert f[f[v]] == v
    return MatchedFrame(frame, f)


# -- proper paths ----------------------------------------------------------


def is_proper_path(mf: MatchedFrame, seq) -> bool:
    """The three proper-path properties plus simple-path validity."""
    return _proper_violation(mf, seq, cyclic=False) is None


def is_proper_cycle(mf: MatchedFrame, seq) -> bool:
    return _proper_violation(mf, seq, cyclic=True) is None


def _proper_violation(mf: MatchedFrame, seq, cyclic: bool) -> Optional[str]:
    fr = mf.frame
    seq = tuple(seq)
    if len(set(seq)) != len(seq):
        return "repeated vertex"
    on = set(seq)
    pairs = list(zip(seq, seq[1:]))
    if cyclic:
        if len(seq) < 3:
            return "cycle too short"
        pairs.append((seq[-1], seq[0]))
    special = set(fr.S_E)
    edges_on = {_norm(a, b) for a, b in pairs}
    for a, b in pairs:
        crossing = (a in fr.V1) != (b in fr.V1)
        if not crossing and _norm(a, b) not in special:
            return f"edge {(a, b)} neither crossing nor special"
    for v in fr.S_V & on:
        e = fr.special_edge_of(v)
        if e not in edges_on:
            return f"special vertex {v} on path without its edge {e}"
    img = {mf.f[v] for v in fr.V2 & on}
    if fr.V1_prime & on != img:
        return "V1' occupancy differs from f(V2 occupancy)"
    if not cyclic:
        ends_v1 = sum(1 for v in (seq[0], seq[-1]) if v in fr.V1)
        if len(seq) >= 2 and ends_v1 != 1:
            return "endpoints not one per side"
    return None


def check_proper_path(mf: MatchedFrame, seq) -> None:
    why = _proper_violation(mf, seq, cyclic=False)
    if why is not None:
        raise PreconditionError(f"not a proper path: {why}")


def _orient_v2_first(mf: MatchedFrame, seq) -> tuple[int, ...]:
    seq = tuple(seq)
    return seq if seq[0] in mf.frame.V2 else tuple(reversed(seq))


def proper_extensions(G: Graph, mf: MatchedFrame, seq) -> list[tuple[int, ...]]:
    """All one-move proper extensions of a proper path, per the maximality
    rules: matched extension at either end, special-edge attachment (partner
    off path), the V1-endpoint partner append, and the on-path-partner
    insertion."""
    fr = mf.frame
    seq = _orient_v2_first(mf, seq)
    on = set(seq)
    head, tail = seq[0], seq[-1]  # head in V2, tail in V1
    out: list[tuple[int, ...]] = []
    for y in G.neighbors(head):
        if y not in fr.V1 or y in on:
            continue
        if y in fr.S_V:
            yp = [w for w in fr.special_edge_of(y) if w != y][0]
            if yp not in on:
                out.append((mf.f[yp], yp, y) + seq)
            else:
                # partner on the path: re-route one of its crossing edges
                j = seq.index(yp)
                if j == len(seq) - 1:
                    out.append(seq + (y,))
                else:
                    # break the head-side crossing edge at the partner
                    pre, post = seq[:j], seq[j:]
                    out.append(tuple(reversed(pre)) + (y,) + post)
        else:
            out.append((mf.f[y], y) + seq)
    for z in G.neighbors(tail):
        if z in fr.V2 and z not in on:
            out.append(seq + (z, mf.f[z]))
    if tail not in fr.S_V:
        e = fr.special_edge_of(tail)
        if e is not None:
            y = e[0] if e[1] == tail else e[1]
            if y not in on:
                out.append(seq + (y,))
    return [p for p in out if is_proper_path(mf, p)]


def proper_endpoint_closure(
    G: Graph, mf: MatchedFrame, seq, compute_T: bool = False
):
    """Rotation closure of a maximal proper path; pivots restricted to V1''
    so no special edge ever breaks.  S_P lives in V2 and each T_v in V1.

    Returns (S_P witnesses dict, T dict) mirroring the general atlas: S_P
    witnesses run from the reached V2 endpoint to the pinned V1 endpoint.
    """
    fr = mf.frame
    seq = _orient_v2_first(mf, seq)
    check_proper_path(mf, seq)
    if proper_extensions(G, mf, seq):
        raise PreconditionError("proper path is extendable; extend before closure")
    v1dd = fr.V1_dprime
    root = PathState(seq=seq, origin=seq)
    reached = _closure(G, root, pivot_ok=lambda p: p in v1dd)
    for v, wit in reached.items():
        assert v in fr.V2
        assert is_proper_path(mf, wit.seq)
    T: dict[int, dict[int, PathState]] = {}
    if compute_T:
        for v in sorted(reached):
            T[v] = proper_t_closure(G, mf, reached[v])
    return reached, T


def proper_t_closure(G: Graph, mf: MatchedFrame, witness: PathState):
    """Far-end closure for one pinned V2 endpoint: pivots in V2 (safe, since
    edges at a V2 vertex are always crossing)."""
    fr = mf.frame
    root = witness.reversed()
    reached = _closure(G, root, pivot_ok=lambda p: p in fr.V2)
    for w, wit in reached.items():
        assert w in fr.V1
        assert is_proper_path(mf, wit.seq)
    return reached


# -- proper Hamilton cycle search -------------------------------------------


@dataclass(frozen=True)
class ProperSearchResult:
    cycle: Optional[tuple[int, ...]]
    restarts: int
    steps: int
    diagnostic: str = ""

    @property
    def found(self) -> bool:
        return self.cycle is not None


def _framed_connected(G: Graph, mf: MatchedFrame) -> bool:
    fr = mf.frame
    start = next(iter(fr.V2), None)
    if start is None:
        return False
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in G.neighbors(v):
            if (v in fr.V1) != (w in fr.V1) and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == G.n


def _reopen_proper_cycle(G: Graph, mf: MatchedFrame, cyc: tuple[int, ...]):
    """Longer proper path from a non-spanning proper cycle via an edge to an
    off-cycle vertex, following the frame's case analysis."""
    fr = mf.frame
    on = set(cyc)
    L = len(cyc)

    def open_at(j: int, avoid_special: bool) -> Optional[tuple[int, ...]]:
        # path ending at cyc[j], breaking one of its cycle edges
        nxt = _norm(cyc[j], cyc[(j + 1) % L])
        prv = _norm(cyc[(j - 1) % L], cyc[j])
        special = set(fr.S_E)
        if not avoid_special or nxt not in special:
            return tuple(cyc[(j + 1 + t) % L] for t in range(L))
        if not avoid_special or prv not in special:
            return tuple(cyc[(j - 1 - t) % L] for t in range(L))
        return None

    for j, ci in enumerate(cyc):
        for x in sorted(G.neighbor_set(ci) - on):
            if (ci in fr.V1) == (x in fr.V1):
                continue  # only framed-subgraph edges step off the cycle
            base = open_at(j, avoid_special=True)
            if base is None:
                continue
            if x in fr.V2:
                cand = base + (x, mf.f[x])
            elif x in fr.S_V:
                e = fr.special_edge_of(x)
                xp = e[0] if e[1] == x else e[1]
                if xp in on:
                    continue
                cand = base + (x, xp, mf.f[xp])
            else:
                cand = base + (x, mf.f[x])
            if is_proper_path(mf, cand):
                return cand
    return None


def find_proper_hamilton_cycle(
    G: Graph, mf: MatchedFrame, budget: Optional[Budget] = None, seed: int = 0
) -> ProperSearchResult:
    """Proper Hamilton cycle search: seed with a matched edge, extend with
    the proper rules, close through S_P x T_v, reopen non-spanning closes.

    A spanning proper cycle covers every vertex and uses exactly the k
    special edges among its non-crossing edges.  NotFound reflects budget,
    except for the fatal diagnostics (disconnected framed subgraph).
    """
    budget = budget or Budget(restarts=12, max_steps=200_000)
    fr = mf.frame
    if not fr.V2:
        return ProperSearchResult(None, 0, 0, "empty V2 side")
    if not _framed_connected(G, mf):
        return ProperSearchResult(None, 0, 0, "framed subgraph disconnected")
    rng = random.Random(seed)
    n = G.n
    steps = 0
    seeds = sorted(fr.V2)
    for restart in range(budget.restarts):
        if steps >= budget.max_steps:
            break
        v2 = seeds[restart % len(seeds)] if restart < len(seeds) else rng.choice(seeds)
        seq = (v2, mf.f[v2])
        while steps < budget.max_steps:
            exts = proper_extensions(G, mf, seq)
            if exts:
                seq = exts[rng.randrange(len(exts))]
                steps += 1
                continue
            reached = proper_endpoint_closure(G, mf, seq)[0]
            steps += len(reached)
            progressed = False
            for v in sorted(reached):
                wit = reached[v]
                exts = proper_extensions(G, mf, wit.seq)
                if exts:
                    seq = exts[0]
                    progressed = True
                    break
            if progressed:
                steps += 1
                continue
            closed = None
            for v in sorted(reached):
                tv = proper_t_closure(G, mf, reached[v])
                steps += len(tv)
                for w in sorted(tv):
                    if G.has_edge(v, w):
                        closed = tv[w].seq  # runs w .. v, closed by {v, w}
                        break
                if closed:
                    break
            if closed is None:
                break  # restart
            if len(closed) == n:
                assert is_proper_cycle(mf, closed)
                return ProperSearchResult(tuple(closed), restart + 1, steps)
            reopened = _reopen_proper_cycle(G, mf, tuple(closed))
            if reopened is None:
                break
            seq = reopened
            steps += 1
    return ProperSearchResult(None, budget.restarts, steps)
