"""Certify or refute the three quantitative expansion notions on concrete
graphs: half-expander, expander, and k-bipartite-expander.

Each definition quantifies over exponentially many vertex sets, so exact
mode enumerates subsets only at small n (<= 16; <= 14 for the disjoint-pair
condition) and sampled mode draws uniform sets of each relevant size.  A
`fails` verdict always carries a witness that re-checks independently; a
sampled run without a counterexample is explicitly not a certificate.

Size thresholds: "|X| <= t" bounds use floor(t), "|X| >= t" bounds use
ceil(t), conservative toward each definition.  Desk-scale parameter caveat:
the rotation-extension guarantee behind the half-expander needs
r >= 16 eps^-3 log n, which is rarely satisfiable at small n; reports carry
the hypothesis slack so experiments can show the trend without overclaiming.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .bipartite import SpecialFrame
from .errors import BudgetError, DomainError
from .graph import Graph, neighborhood, pair_count

EXACT_MAX_N = 16
EXACT_PAIRS_MAX_N = 14

HOLDS = "holds"
FAILS = "fails"
SAMPLED_OK = "sampled-no-counterexample"


@dataclass(frozen=True)
class ExpanderParams:
    epsilon: float
    r: float
    k: int = 0

    def __post_init__(self):
        if not 0 < self.epsilon <= 1:
            raise DomainError(f"epsilon must lie in (0, 1], got {self.epsilon}")
        if self.r < 1:
            raise DomainError(f"r must be >= 1, got {self.r}")
        if self.k < 0:
            raise DomainError("k must be nonnegative")


@dataclass
class ExpansionReport:
    verdict: str
    condition: Optional[str] = None
    witness: Optional[tuple] = None
    observed: Optional[float] = None
    required: Optional[float] = None
    details: dict = field(default_factory=dict)


def _floor_at_most(x: float) -> int:
    return math.floor(x + 1e-12)


def _ceil_at_least(x: float) -> int:
    return max(0, math.ceil(x - 1e-12))


def _neighbor_masks(G: Graph) -> list[int]:
    masks = [0] * G.n
    for v in range(G.n):
        m = 0
        for w in G.neighbors(v):
            m |= 1 << w
        masks[v] = m
    return masks


def _nbhd_size(masks, members) -> int:
    m = 0
    for v in members:
        m |= masks[v]
    return bin(m).count("1")


def _iter_subsets(universe, size):
    return combinations(universe, size)


def _sample_subset(rng, universe, size):
    return tuple(sorted(rng.sample(universe, size)))


# -- half-expander -----------------------------------------------------------


def check_half_expander(
    G: Graph,
    params: ExpanderParams,
    mode: str = "exact",
    seed: int = 0,
    samples: int = 10_000,
) -> ExpansionReport:
    """Conditions: (i) small sets r-expand, (ii) large sets reach almost half
    the graph, (iii) every pair of disjoint near-half sets spans > 2n pairs."""
    n, eps, r = G.n, params.epsilon, params.r
    t_small = _floor_at_most(eps * n / r)
    t_large = _ceil_at_least(n / (eps * r))
    t_pair = max(1, _ceil_at_least((0.5 - eps ** 0.2) * n))
    masks = _neighbor_masks(G)
    details = {
        "small_max": t_small,
        "large_min": t_large,
        "pair_min": t_pair,
        "re_hypothesis_r_needed": (16 * eps ** -3 * math.log(n)) if n > 1 else None,
        "re_hypothesis_slack": (r - 16 * eps ** -3 * math.log(n)) if n > 1 else None,
    }

    def cond1(X):
        return _nbhd_size(masks, X) >= r * len(X)

    def cond2(X):
        return _nbhd_size(masks, X) >= (0.5 - eps) * n

    def cond3(X, Y):
        return pair_count(G, X, Y) > 2 * n

    if mode == "exact":
        if n > EXACT_MAX_N:
            raise BudgetError(f"exact mode capped at n <= {EXACT_MAX_N}")
        for size in range(1, t_small + 1):
            for X in _iter_subsets(range(n), size):
                if not cond1(X):
                    return ExpansionReport(
                        FAILS, "i", (X,), _nbhd_size(masks, X), r * size, details
                    )
        for size in range(t_large, n + 1):
            for X in _iter_subsets(range(n), size):
                if not cond2(X):
                    return ExpansionReport(
                        FAILS, "ii", (X,), _nbhd_size(masks, X), (0.5 - eps) * n, details
                    )
        if 2 * t_pair <= n:
            if n > EXACT_PAIRS_MAX_N:
                raise BudgetError(
                    f"exact disjoint-pair enumeration capped at n <= {EXACT_PAIRS_MAX_N}"
                )
            # pair_count is monotone in both arguments, so minimal-size
            # disjoint pairs decide the condition
            for X in _iter_subsets(range(n), t_pair):
                rest = [v for v in range(n) if v not in X]
                for Y in _iter_subsets(rest, t_pair):
                    if not cond3(X, Y):
                        return ExpansionReport(
                            FAILS, "iii", (X, Y), pair_count(G, X, Y), 2 * n, details
                        )
        return ExpansionReport(HOLDS, details=details)

    if mode != "sampled":
        raise DomainError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    verts = list(range(n))
    for _ in range(samples):
        if t_small >= 1:
            size = rng.randint(1, t_small)
            X = _sample_subset(rng, verts, size)
            if not cond1(X):
                return ExpansionReport(
                    FAILS, "i", (X,), _nbhd_size(masks, X), r * size, details
                )
        if t_large <= n:
            size = rng.randint(t_large, n)
            X = _sample_subset(rng, verts, size)
            if not cond2(X):
                return ExpansionReport(
                    FAILS, "ii", (X,), _nbhd_size(masks, X), (0.5 - eps) * n, details
                )
        if 2 * t_pair <= n:
            X = _sample_subset(rng, verts, t_pair)
            rest = [v for v in verts if v not in X]
            Y = _sample_subset(rng, rest, t_pair)
            if not cond3(X, Y):
                return ExpansionReport(
                    FAILS, "iii", (X, Y), pair_count(G, X, Y), 2 * n, details
                )
    return ExpansionReport(SAMPLED_OK, details=details)


# -- expander ------------------------------------------------------------------


def check_expander(
    G: Graph,
    params: ExpanderParams,
    mode: str = "exact",
    seed: int = 0,
    samples: int = 10_000,
) -> ExpansionReport:
    """Conditions: (i) sets up to n/r^{3/2} r-expand, (ii) sets of size at
    least n/r^{3/4} reach (1-eps)n vertices."""
    n, eps, r = G.n, params.epsilon, params.r
    t_small = _floor_at_most(n / r ** 1.5)
    t_large = _ceil_at_least(n / r ** 0.75)
    masks = _neighbor_masks(G)
    details = {"small_max": t_small, "large_min": t_large}

    def cond1(X):
        return _nbhd_size(masks, X) >= r * len(X)

    def cond2(X):
        return _nbhd_size(masks, X) >= (1 - eps) * n

    if mode == "exact":
        if n > EXACT_MAX_N:
            raise BudgetError(f"exact mode capped at n <= {EXACT_MAX_N}")
        for size in range(1, t_small + 1):
            for X in _iter_subsets(range(n), size):
                if not cond1(X):
                    return ExpansionReport(
                        FAILS, "i", (X,), _nbhd_size(masks, X), r * size, details
                    )
        for size in range(t_large, n + 1):
            for X in _iter_subsets(range(n), size):
                if not cond2(X):
                    return ExpansionReport(
                        FAILS, "ii", (X,), _nbhd_size(masks, X), (1 - eps) * n, details
                    )
        return ExpansionReport(HOLDS, details=details)

    if mode != "sampled":
        raise DomainError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    verts = list(range(n))
    for _ in range(samples):
        if t_small >= 1:
            size = rng.randint(1, t_small)
            X = _sample_subset(rng, verts, size)
            if not cond1(X):
                return ExpansionReport(
                    FAILS, "i", (X,), _nbhd_size(masks, X), r * size, details
                )
        if t_large <= n:
            size = rng.randint(t_large, n)
            X = _sample_subset(rng, verts, size)
            if not cond2(X):
                return ExpansionReport(
                    FAILS, "ii", (X,), _nbhd_size(masks, X), (1 - eps) * n, details
                )
    return ExpansionReport(SAMPLED_OK, details=details)


# -- bipartite expander -----------------------------------------------------------


def check_bipartite_expander(
    G: Graph,
    frame: SpecialFrame,
    params: ExpanderParams,
    mode: str = "exact",
    seed: int = 0,
    samples: int = 10_000,
) -> ExpansionReport:
    """Conditions on crossing expansion: small/large X in V1 against V2, and
    small/large Y in V2 against V1'' (so special edges stay breakable-free)."""
    n, eps, r = G.n, params.epsilon, params.r
    V1, V2 = sorted(frame.V1), sorted(frame.V2)
    V1dd = frame.V1_dprime
    t_small = _floor_at_most(n / r ** 1.5)
    t_large = _ceil_at_least(n / r ** 0.75)
    details = {"small_max": t_small, "large_min": t_large, "k": frame.k}

    def n_into(X, side) -> int:
        out = set()
        for v in X:
            out |= G.neighbor_set(v)
        return len(out & side)

    checks = [
        ("i", V1, frozenset(V2), len(V2)),
        ("ii", V2, V1dd, len(V1dd)),
    ]

    def violated(cid, X, side, side_size):
        got = n_into(X, side)
        if len(X) <= t_small and got < r * len(X):
            return got, r * len(X)
        if len(X) >= t_large and got < (1 - eps) * side_size:
            return got, (1 - eps) * side_size
        return None

    if mode == "exact":
        if n > EXACT_MAX_N:
            raise BudgetError(f"exact mode capped at n <= {EXACT_MAX_N}")
        for cid, dom, side, side_size in checks:
            for size in range(1, len(dom) + 1):
                if size > t_small and size < t_large:
                    continue
                for X in _iter_subsets(dom, size):
                    bad = violated(cid, X, side, side_size)
                    if bad:
                        return ExpansionReport(FAILS, cid, (X,), bad[0], bad[1], details)
        return ExpansionReport(HOLDS, details=details)

    if mode != "sampled":
        raise DomainError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    for _ in range(samples):
        for cid, dom, side, side_size in checks:
            sizes = [s for s in range(1, len(dom) + 1) if s <= t_small or s >= t_large]
            if not sizes:
                continue
            size = rng.choice(sizes)
            X = _sample_subset(rng, list(dom), size)
            bad = violated(cid, X, side, side_size)
            if bad:
                return ExpansionReport(FAILS, cid, (X,), bad[0], bad[1], details)
    return ExpansionReport(SAMPLED_OK, details=details)


# -- witness re-check ---------------------------------------------------------


def recheck_witness(
    G: Graph,
    kind: str,
    report: ExpansionReport,
    params: ExpanderParams,
    frame: Optional[SpecialFrame] = None,
) -> bool:
    """Independently re-evaluate a fails-witness against its named condition."""
    if report.verdict != FAILS or report.witness is None:
        return False
    n, eps, r = G.n, params.epsilon, params.r
    if kind == "half":
        if report.condition == "i":
            (X,) = report.witness
            return len(neighborhood(G, X)) < r * len(X)
        if report.condition == "ii":
            (X,) = report.witness
            return len(neighborhood(G, X)) < (0.5 - eps) * n
        if report.condition == "iii":
            X, Y = report.witness
            return pair_count(G, X, Y) <= 2 * n
    if kind == "plain":
        (X,) = report.witness
        if report.condition == "i":
            return len(neighborhood(G, X)) < r * len(X)
        return len(neighborhood(G, X)) < (1 - eps) * n
    if kind == "bip":
        (X,) = report.witness
        if report.condition == "i":
            got = len(neighborhood(G, X) & frame.V2)
            lim = r * len(X) if len(X) <= n / r ** 1.5 else (1 - eps) * len(frame.V2)
        else:
            got = len(neighborhood(G, X) & frame.V1_dprime)
            lim = (
                r * len(X)
                if len(X) <= n / r ** 1.5
                else (1 - eps) * len(frame.V1_dprime)
            )
        return got < lim
    raise DomainError(f"unknown kind {kind!r}")
