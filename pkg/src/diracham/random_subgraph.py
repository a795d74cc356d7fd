"""Random subgraphs G_p of a host graph and Hamiltonicity threshold sweeps.

Each host edge survives independently with probability p.  Sweeps across a
p-grid are coupled: one uniform per edge per trial, thresholded at each p,
so the subgraphs are nested along the grid and Hamiltonicity (a monotone
property) can be asserted monotone per trial, exactly - a certificate found
at a smaller p is simply re-verified at every larger one.

RNG: counter-based Philox keyed by (seed, trial), so trials are independent
reproducible substreams regardless of execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError
from .graph import Graph, is_dirac, min_degree, verify_hamilton_cycle, is_connected
from .oracle import ORACLE_MAX_N, hamilton_cycle
from .rotation import Budget, find_hamilton_cycle


def _edge_uniforms(m: int, seed: int, trial: int) -> np.ndarray:
    gen = np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), trial]))
    return gen.random(m)


def sample_subgraph(G: Graph, p: float, seed: int, trial: int = 0) -> Graph:
    """Keep each edge of G independently with probability p; deterministic
    given (seed, trial)."""
    if not 0 <= p <= 1:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    u = _edge_uniforms(G.m, seed, trial)
    edges = [e for e, x in zip(G.edges(), u) if x < p]
    return Graph(G.n, edges)


# -- tail bounds -------------------------------------------------------------


def chernoff_bound(n: int, p: float, lam: float) -> float:
    """Explicit binomial tail bound 2 exp(-lam^2 / (3 n p)), valid for
    lam <= np (the unquantified constant fixed at 1/3)."""
    if lam > n * p:
        raise DomainError(f"hypothesis lam <= np violated: {lam} > {n * p}")
    if n * p == 0:
        raise DomainError("np must be positive")
    return 2.0 * math.exp(-(lam**2) / (3.0 * n * p))


def hypergeometric_bound(n: int, t: float) -> float:
    """Hypergeometric tail bound 2 exp(-2 t^2 / n); n is the draw count."""
    if n <= 0:
        raise DomainError("n must be positive")
    return 2.0 * math.exp(-2.0 * t * t / n)


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    if trials <= 0:
        raise DomainError("trials must be positive")
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials**2)) / denom
    return max(0.0, center - half), min(1.0, center + half)


# -- sweep --------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    p: float
    trials: int
    successes: int
    phat: float
    wilson95_lo: float
    wilson95_hi: float
    mean_steps: float


@dataclass
class SweepResult:
    rows: list[SweepRow]
    graph_desc: str
    budget: Budget
    trial_success: list[list[bool]]  # [trial][p index], coupled
    warnings: list[str]

    def row_for(self, p: float) -> SweepRow:
        for row in self.rows:
            if abs(row.p - p) < 1e-12:
                return row
        raise KeyError(p)


CSV_HEADER = "p,trials,successes,phat,wilson95_lo,wilson95_hi,mean_steps"


def sweep_rows_csv(result: SweepResult) -> str:
    lines = [CSV_HEADER]
    for r in result.rows:
        lines.append(
            f"{r.p:.10g},{r.trials},{r.successes},{r.phat:.10g},"
            f"{r.wilson95_lo:.10g},{r.wilson95_hi:.10g},{r.mean_steps:.10g}"
        )
    return "\n".join(lines) + "\n"


def hamiltonicity_sweep(
    G: Graph,
    p_list: Sequence[float],
    trials: int,
    budget: Optional[Budget] = None,
    seed: int = 0,
    graph_desc: str = "",
) -> SweepResult:
    """Empirical Hamiltonicity probability of G_p along a coupled p-grid.

    Per trial, one uniform per edge drives every p (ascending); a Hamilton
    cycle found at some p is re-verified (it survives, by coupling) at each
    larger p, making per-trial success monotone in p by construction.  A
    trial's engine search runs only where no certificate is inherited, with
    a quick minimum-degree/connectivity preflight and an exact-oracle
    fallback at n <= 16.  NotFound counts as failure; it is a budget
    statement, not a nonexistence proof.
    """
    budget = budget or Budget(restarts=6, max_steps=60_000)
    warnings: list[str] = []
    try:
        if not is_dirac(G):
            warnings.append("host graph is not Dirac; threshold behaviour not anchored")
    except DomainError:
        warnings.append("host graph too small for the Dirac predicate")
    ps = sorted(p_list)
    for p in ps:
        if not 0 <= p <= 1:
            raise DomainError(f"p must lie in [0, 1], got {p}")
    per_p_success = [0] * len(ps)
    per_p_steps = [0.0] * len(ps)
    trial_success: list[list[bool]] = []
    edges = G.edges()
    for trial in range(trials):
        u = _edge_uniforms(G.m, seed, trial)
        cert = None
        row: list[bool] = []
        for pi, p in enumerate(ps):
            kept = [e for e, x in zip(edges, u) if x < p]
            Gp = Graph(G.n, kept)
            steps = 0
            if cert is not None:
                ok = verify_hamilton_cycle(Gp, cert)
                assert ok, "coupling violated: inherited certificate must survive"
            else:
                ok = False
                if G.n >= 3 and min_degree(Gp) >= 2 and is_connected(Gp):
                    res = find_hamilton_cycle(Gp, budget=budget, seed=(seed << 8) ^ trial)
                    steps = res.steps
                    if res.found:
                        ok = True
                        cert = res.cycle
                    elif Gp.n <= ORACLE_MAX_N and Gp.n <= 16:
                        exact = hamilton_cycle(Gp)
                        if exact is not None:
                            ok = True
                            cert = exact
            per_p_success[pi] += 1 if ok else 0
            per_p_steps[pi] += steps
            row.append(ok)
        trial_success.append(row)
    rows = []
    for pi, p in enumerate(ps):
        s = per_p_success[pi]
        lo, hi = wilson_interval(s, trials)
        rows.append(
            SweepRow(p, trials, s, s / trials, lo, hi, per_p_steps[pi] / trials)
        )
    return SweepResult(rows, graph_desc, budget, trial_success, warnings)


def clogn_grid(n: int, cs: Sequence[float]) -> list[float]:
    """p = c log n / n for each c, clipped into [0, 1]."""
    return [min(1.0, max(0.0, c * math.log(n) / n)) for c in cs]
