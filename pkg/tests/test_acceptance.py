"""Acceptance suite: one test per criterion, each printing a PASS line with
its measured numbers (run with `pytest tests/test_acceptance.py -v -s`).

Every tolerance is pinned here, not configured elsewhere."""

import math
import random
import time
from itertools import combinations, permutations

import numpy as np
import pytest

from diracham.bipartite import (
    build_matched_frame,
    find_proper_hamilton_cycle,
    hall_matching,
    is_proper_cycle,
)
from diracham.classifier import (
    DENSE_CROSSING,
    NEAR_BIPARTITE,
    ClassifierParams,
    classify,
    verify_classification,
)
from diracham.combinators import fake_bias, split_board
from diracham.dirac_strategy import (
    breaker_greedy_block,
    maker_dirac_strategy,
    play_hamiltonicity_game,
)
from diracham.errors import HallViolationError
from diracham.games import (
    BREAKER,
    MAKER,
    Board,
    GameState,
    WinningFamily,
    beck_criterion,
    breaker_potential_move,
    exhaustive_value,
    play,
    random_strategy,
)
from diracham.generators import (
    complete_bipartite,
    complete_graph,
    random_dirac_graph,
    random_graph,
    two_cliques_bridge,
    two_cliques_matching,
)
from diracham.graph import Graph, verify_hamilton_cycle, verify_hamilton_path
from diracham.oracle import hamilton_cycle
from diracham.random_subgraph import (
    chernoff_bound,
    clogn_grid,
    hamiltonicity_sweep,
    hypergeometric_bound,
)
from diracham.rotation import (
    Budget,
    PathState,
    endpoint_closure,
    find_hamilton_cycle,
    replay,
    rotate,
)


def test_acceptance_dirac_implies_hamilton():
    """500 seeded random Dirac graphs, 8 <= n <= 16: engine succeeds on all,
    the exact oracle confirms Hamiltonicity, total < 60 s."""
    t0 = time.time()
    successes = 0
    for i in range(500):
        n = 8 + i % 9
        G = random_dirac_graph(n, seed=i)
        res = find_hamilton_cycle(G, seed=i)
        assert res.found, f"engine failed on Dirac graph #{i} (n={n})"
        assert verify_hamilton_cycle(G, res.cycle)
        assert hamilton_cycle(G) is not None  # oracle cross-check
        successes += 1
    elapsed = time.time() - t0
    assert successes == 500
    assert elapsed < 60.0, f"took {elapsed:.1f}s"
    print(f"\nACCEPTANCE dirac-implies-hamilton: PASS (500/500 in {elapsed:.1f}s)")


def _unbroken_intervals(origin, broken_edges):
    cuts = set()
    for i in range(len(origin) - 1):
        e = (min(origin[i], origin[i + 1]), max(origin[i], origin[i + 1]))
        if e in broken_edges:
            cuts.add(i)
    intervals, start = [], 0
    for i in sorted(cuts):
        intervals.append(origin[start : i + 1])
        start = i + 1
    intervals.append(origin[start:])
    return [iv for iv in intervals if iv]


def test_acceptance_rotation_bookkeeping():
    """10^4 random rotation sequences: interval preservation and replay
    determinism, 0 failures."""
    rng = random.Random(2024)
    failures = 0
    for trial in range(10_000):
        n = rng.randrange(5, 12)
        perm = list(range(n))
        rng.shuffle(perm)
        base = {(min(a, b), max(a, b)) for a, b in zip(perm, perm[1:])}
        extra = random_graph(n, 0.4, seed=trial)
        G = Graph(n, sorted(set(extra.edges()) | base))
        ps = PathState(seq=tuple(perm))
        for _ in range(rng.randrange(1, 8)):
            L = len(ps.seq)
            choices = [
                i for i in range(0, L - 2) if G.has_edge(ps.seq[-1], ps.seq[i])
            ]
            if not choices:
                break
            ps = rotate(ps, G, rng.choice(choices))
        if replay(ps) != ps.seq:
            failures += 1
            continue
        broken = {e for _, e in ps.rotations}
        seq = list(ps.seq)
        for iv in _unbroken_intervals(ps.origin, broken):
            iv = list(iv)
            k = len(iv)
            ok = any(
                seq[s : s + k] == iv or seq[s : s + k] == iv[::-1]
                for s in range(len(seq) - k + 1)
            )
            if not ok:
                failures += 1
                break
    assert failures == 0
    print("\nACCEPTANCE rotation-bookkeeping: PASS (10000 sequences, 0 failures)")


def test_acceptance_endpoint_set_values():
    """Two-cliques+bridge gives |S_P| = n/2 - 1 (n in 8,10,12); the
    complete-bipartite(+1) instance confines S_P to the larger side
    (n in 9,11)."""
    for n in (8, 10, 12):
        G = two_cliques_bridge(n)
        seq = tuple(range(n))
        assert verify_hamilton_path(G, seq)
        atlas = endpoint_closure(G, PathState(seq=seq))
        assert len(atlas.S_P) == n // 2 - 1, f"bridge n={n}"
    for n in (9, 11):
        a = (n + 1) // 2
        G = complete_bipartite(a, n - a)
        seq = []
        for i in range(a):
            seq.append(i)
            if i < n - a:
                seq.append(a + i)
        atlas = endpoint_closure(G, PathState(seq=tuple(seq)))
        assert atlas.S_P <= frozenset(range(a)), f"bipartite n={n}: S_P leaks"
        assert len(atlas.S_P) == n // 2
    print("\nACCEPTANCE endpoint-set-values: PASS (bridge n/2-1; bipartite side-confined)")


def test_acceptance_classifier_postconditions():
    """K_n, two cliques + perfect matching, complete bipartite at
    alpha=0.001, gamma=0.032 for all even n in [12, 64]: the derived case
    comes out and verify_classification passes."""
    params = ClassifierParams(alpha=0.001, gamma=0.032)
    checked = 0
    for n in range(12, 65, 2):
        mode = "exact" if n <= 12 else "local_search"
        for G, expected in (
            (complete_graph(n), DENSE_CROSSING),
            (two_cliques_matching(n), DENSE_CROSSING),
            (complete_bipartite(n // 2, n // 2), NEAR_BIPARTITE),
        ):
            cls = classify(G, params, mode=mode, seed=n)
            assert cls.case == expected, f"n={n}: got {cls.case}, want {expected}"
            assert verify_classification(G, cls, params, seed=n)
            checked += 1
    print(f"\nACCEPTANCE classifier-postconditions: PASS ({checked} instances)")


def test_acceptance_threshold_phenomenon():
    """Coupled sweep on K100 and the structured families at n=100 over
    p in {1,2,4,8} log n / n with 200 trials: per-trial monotonicity exact,
    phat(8) - phat(1) >= 0.5, runtime < 5 min."""
    t0 = time.time()
    ps = clogn_grid(100, [1, 2, 4, 8])
    hosts = {
        "K100": complete_graph(100),
        "two-K50+matching": two_cliques_matching(100),
        "K50,50": complete_bipartite(50, 50),
    }
    gaps = {}
    for name, G in hosts.items():
        res = hamiltonicity_sweep(
            G, ps, trials=200, budget=Budget(6, 60_000), seed=1234, graph_desc=name
        )
        for row in res.trial_success:
            for a, b in zip(row, row[1:]):
                assert b or not a, f"{name}: coupled monotonicity violated"
        gap = res.rows[-1].phat - res.rows[0].phat
        gaps[name] = gap
        assert gap >= 0.5, f"{name}: gap {gap:.2f} < 0.5"
    elapsed = time.time() - t0
    assert elapsed < 300.0, f"took {elapsed:.1f}s"
    gap_str = ", ".join(f"{k}={v:.2f}" for k, v in gaps.items())
    print(f"\nACCEPTANCE threshold-phenomenon: PASS (gaps {gap_str}; {elapsed:.1f}s)")


def _breaker_always_survives(F: WinningFamily, board_size: int) -> bool:
    """Exhaustive adversarial Maker vs the greedy potential Breaker at
    (1:1), Maker first: True iff Breaker never loses."""

    def rec(maker: frozenset, breaker: frozenset, maker_turn: bool) -> bool:
        if any(B <= maker for B in F.sets):
            return False
        free = [e for e in range(board_size) if e not in maker and e not in breaker]
        if not free:
            return True
        if maker_turn:
            return all(rec(maker | {e}, breaker, False) for e in free)
        state = GameState(board_size=board_size, maker=set(maker), breaker=set(breaker))
        state.to_move = BREAKER
        picks = breaker_potential_move(F, state, 1, 1)
        return rec(maker, breaker | set(picks), True)

    return rec(frozenset(), frozenset(), True)


def test_acceptance_beck_soundness():
    """1000 random hypergraphs (board <= 5, <= 6 sets) whose (1:1) criterion
    flags Breaker: the greedy potential Breaker survives every Maker line,
    and exhaustive_value confirms the Breaker win."""
    rng = random.Random(99)
    flagged = 0
    tried = 0
    while flagged < 1000:
        tried += 1
        size = rng.randint(2, 5)
        F = WinningFamily.of(
            [
                rng.sample(range(size), rng.randint(1, size))
                for _ in range(rng.randint(1, 6))
            ]
        )
        value, breaker_flagged = beck_criterion(F, 1, 1)
        if not breaker_flagged:
            continue
        flagged += 1
        assert _breaker_always_survives(F, size), f"greedy Breaker lost: {F}"
        assert exhaustive_value(size, F, (1, 1), MAKER) == BREAKER
    print(f"\nACCEPTANCE beck-soundness: PASS (1000 flagged of {tried} sampled)")


def test_acceptance_combinator_contracts():
    """split_board and fake_bias counting property tests: 10^3 randomized
    schedules each, 0 violations."""
    rng = random.Random(7)
    unwinnable = lambda size: WinningFamily.of([set(range(size))])

    def sub():
        return lambda state, _rng: [state.unclaimed()[0]]

    violations = 0
    for trial in range(1000):
        b = rng.randint(1, 2)
        parts = [[0, 1, 2], [3, 4, 5], [6, 7, 8]]
        maker = split_board(9, parts, [sub() for _ in range(3)], b)
        t = play(
            Board(9),
            maker,
            random_strategy(),
            family=unwinnable(9),
            bias=(1, b),
            seed=trial,
        )
        if t.forfeited_by is not None:
            violations += 1
            continue
        for view in maker.views:
            if view.last_turn_delivery > 3 * b:
                violations += 1
    assert violations == 0

    for trial in range(1000):
        b0 = rng.randint(2, 3)
        b = rng.randint(1, b0)
        seen = {"last": 0, "bad": 0, "rounds": 0}

        def inner(state, _rng):
            claimed = len(state.breaker)
            new = claimed - seen["last"]
            seen["last"] = claimed
            if seen["rounds"] > 0 and state.unclaimed_count() > 2 * b0 and new != b0:
                seen["bad"] += 1
            seen["rounds"] += 1
            return [state.unclaimed()[0]]

        wrapped = fake_bias(inner, b0, b)
        t = play(
            Board(30),
            wrapped,
            random_strategy(),
            family=unwinnable(30),
            bias=(1, b),
            seed=trial,
        )
        if t.forfeited_by is not None or seen["bad"]:
            violations += 1
    assert violations == 0
    print("\nACCEPTANCE combinator-contracts: PASS (2000 schedules, 0 violations)")


def exhaustive_perfect_matching(G, left, right):
    left, right = sorted(left), sorted(right)
    for perm in permutations(right):
        if all(G.has_edge(u, w) for u, w in zip(left, perm)):
            return dict(zip(left, perm))
    return None


def test_acceptance_bipartite_frames():
    """Proper Hamilton cycles on K_{m,m} (k=0) and K_{m+1,m} + one special
    edge (k=1) for m in 3..8; hall_matching agrees with the exhaustive
    matcher (full enumeration sides <= 4; 500 random at sides 5-6)."""
    for m in range(3, 9):
        K = complete_bipartite(m, m)
        mf = build_matched_frame(K, range(m), range(m, 2 * m), [])
        res = find_proper_hamilton_cycle(K, mf, seed=m)
        assert res.found and len(res.cycle) == 2 * m
        assert is_proper_cycle(mf, res.cycle)
        inside = sum(
            1
            for i in range(len(res.cycle))
            if (res.cycle[i] < m) == (res.cycle[(i + 1) % len(res.cycle)] < m)
        )
        assert inside == 0  # exactly k = 0 special edges

        base = complete_bipartite(m + 1, m)
        G = Graph(2 * m + 1, list(base.edges()) + [(0, 1)])
        mf = build_matched_frame(G, range(m + 1), range(m + 1, 2 * m + 1), [(0, 1)])
        res = find_proper_hamilton_cycle(G, mf, seed=m)
        assert res.found and len(res.cycle) == 2 * m + 1
        assert is_proper_cycle(mf, res.cycle)
        inside_edges = [
            tuple(
                sorted((res.cycle[i], res.cycle[(i + 1) % len(res.cycle)]))
            )
            for i in range(len(res.cycle))
            if (res.cycle[i] <= m) == (res.cycle[(i + 1) % len(res.cycle)] <= m)
        ]
        assert inside_edges == [(0, 1)]  # exactly k = 1, the special edge

    # hall vs exhaustive: full enumeration for equal sides 1..4
    checked = 0
    for s in (1, 2, 3, 4):
        left = list(range(s))
        right = list(range(s, 2 * s))
        cells = [(u, w) for u in left for w in right]
        for mask in range(1 << len(cells)):
            edges = [cells[i] for i in range(len(cells)) if mask >> i & 1]
            G = Graph(2 * s, edges)
            expected = exhaustive_perfect_matching(G, left, right)
            try:
                f = hall_matching(G, left, right)
                ok = expected is not None and all(G.has_edge(u, f[u]) for u in left)
            except HallViolationError:
                ok = expected is None
            assert ok, f"sides {s}, mask {mask}"
            checked += 1
    rng = random.Random(5)
    for trial in range(500):
        s = rng.choice([5, 6])
        left = list(range(s))
        right = list(range(s, 2 * s))
        p = rng.uniform(0.2, 0.9)
        edges = [(u, w) for u in left for w in right if rng.random() < p]
        G = Graph(2 * s, edges)
        expected = exhaustive_perfect_matching(G, left, right)
        try:
            f = hall_matching(G, left, right)
            ok = expected is not None and all(G.has_edge(u, f[u]) for u in left)
        except HallViolationError:
            ok = expected is None
        assert ok
        checked += 1
    print(f"\nACCEPTANCE bipartite-frames: PASS (m=3..8 cycles; {checked} matchings)")


def test_acceptance_tail_bounds():
    """Monte Carlo (10^4 draws) never exceeds the binomial and
    hypergeometric bounds at 20 parameter points each."""
    rng = np.random.Generator(np.random.Philox(key=[11, 0]))
    draws = 10_000
    binom_points = [
        (n, p, lam)
        for n in (40, 80, 160, 320)
        for p, lam in ((0.2, 2), (0.3, 4), (0.5, 6), (0.5, 9), (0.7, 12))
    ]
    assert len(binom_points) == 20
    for n, p, lam in binom_points:
        xs = rng.binomial(n, p, size=draws)
        freq = float(np.mean(np.abs(xs - n * p) >= lam))
        bound = chernoff_bound(n, p, lam)
        assert freq <= bound, f"binomial ({n},{p},{lam}): {freq} > {bound}"
    hyper_points = [
        (N, n, m, t)
        for N, n, m in ((60, 20, 30), (100, 30, 50), (200, 50, 80), (80, 25, 40))
        for t in (2, 3, 5, 7, 9)
    ]
    assert len(hyper_points) == 20
    for N, n, m, t in hyper_points:
        xs = rng.hypergeometric(m, N - m, n, size=draws)
        mean = n * m / N
        freq = float(np.mean(np.abs(xs - mean) >= t))
        bound = hypergeometric_bound(n, t)
        assert freq <= bound, f"hypergeometric ({N},{n},{m},{t}): {freq} > {bound}"
    print("\nACCEPTANCE tail-bounds: PASS (40 parameter points, 10^4 draws each)")


def test_acceptance_maker_selfplay_fixture():
    """K8 and two-K6+matching at (1:1), Maker's composite strategy vs the
    greedy edge-blocking Breaker: verified Hamilton cycle for >= 95% of 100
    seeds on each host."""
    results = {}
    for name, G in (
        ("K8", complete_graph(8)),
        ("two-K6+matching", two_cliques_matching(12)),
    ):
        wins = 0
        for seed in range(100):
            maker = maker_dirac_strategy(G, 1, seed=seed)
            t = play_hamiltonicity_game(
                G, (1, 1), maker, breaker_greedy_block(G), seed=seed
            )
            if t.winner == MAKER:
                edges = G.edges()
                H = Graph(G.n, [edges[e] for e in t.state.maker])
                assert verify_hamilton_cycle(H, t.certificate)
                wins += 1
        results[name] = wins
        assert wins >= 95, f"{name}: {wins}/100 < 95"
    res_str = ", ".join(f"{k}={v}/100" for k, v in results.items())
    print(f"\nACCEPTANCE maker-selfplay-fixture: PASS ({res_str})")
