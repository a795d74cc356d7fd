import random

import pytest

from diracham.dirac_strategy import (
    DENSE,
    FRAME,
    SPLIT,
    breaker_greedy_block,
    breaker_random,
    detect_play_case,
    hamiltonicity_goal_checker,
    maker_dirac_strategy,
    play_hamiltonicity_game,
)
from diracham.errors import PreconditionError
from diracham.games import BREAKER, MAKER, graph_board, play
from diracham.generators import (
    complete_bipartite,
    complete_graph,
    random_dirac_graph,
    two_cliques_bridge,
    two_cliques_matching,
)
from diracham.graph import Graph, verify_hamilton_cycle


def test_requires_dirac():
    with pytest.raises(PreconditionError):
        maker_dirac_strategy(two_cliques_bridge(10), 1)


def test_play_case_detection():
    assert detect_play_case(complete_graph(8))[0] == DENSE
    case, A = detect_play_case(two_cliques_matching(12))
    assert case == SPLIT
    assert A in (frozenset(range(6)), frozenset(range(6, 12)))
    case, V1 = detect_play_case(complete_bipartite(6, 6))
    assert case == FRAME
    assert V1 in (frozenset(range(6)), frozenset(range(6, 12)))


def test_maker_claims_are_legal_and_tracked():
    G = complete_graph(8)
    maker = maker_dirac_strategy(G, 1, seed=3)
    t = play_hamiltonicity_game(G, (1, 1), maker, breaker_random(), seed=3)
    t.state.check_invariants()
    assert t.forfeited_by is None


def test_k8_selfplay_wins():
    G = complete_graph(8)
    wins = 0
    for seed in range(25):
        maker = maker_dirac_strategy(G, 1, seed=seed)
        t = play_hamiltonicity_game(G, (1, 1), maker, breaker_greedy_block(G), seed=seed)
        if t.winner == MAKER:
            wins += 1
            edges = G.edges()
            H = Graph(G.n, [edges[e] for e in t.state.maker])
            assert verify_hamilton_cycle(H, t.certificate)
    assert wins == 25


def test_two_cliques_selfplay_wins_with_crossings():
    G = two_cliques_matching(12)
    wins = 0
    for seed in range(25):
        maker = maker_dirac_strategy(G, 1, seed=seed)
        t = play_hamiltonicity_game(G, (1, 1), maker, breaker_greedy_block(G), seed=seed)
        if t.winner == MAKER:
            wins += 1
            # the winning cycle crosses the cut on exactly two disjoint edges
            cyc = t.certificate
            crossings = [
                (cyc[i], cyc[(i + 1) % len(cyc)])
                for i in range(len(cyc))
                if (cyc[i] < 6) != (cyc[(i + 1) % len(cyc)] < 6)
            ]
            assert len(crossings) == 2
            assert len({v for e in crossings for v in e}) == 4
    assert wins == 25


def test_frame_case_secures_inside_edges():
    # odd bipartite-ish host: K_{6,5} + matching inside the 6-side to reach
    # Dirac degrees; k = 1, so one inside edge ends up on the cycle
    base = complete_bipartite(6, 5)
    extra = [(0, 1), (2, 3), (4, 5)]
    G = Graph(11, list(base.edges()) + extra)
    assert min(G.degrees()) * 2 >= 11
    case, V1 = detect_play_case(G)
    assert case == FRAME and len(V1) == 6
    wins = 0
    for seed in range(12):
        maker = maker_dirac_strategy(G, 1, seed=seed)
        t = play_hamiltonicity_game(G, (1, 1), maker, breaker_greedy_block(G), seed=seed)
        if t.winner == MAKER:
            wins += 1
            cyc = t.certificate
            inside = [
                (cyc[i], cyc[(i + 1) % len(cyc)])
                for i in range(len(cyc))
                if cyc[i] < 6 and cyc[(i + 1) % len(cyc)] < 6
            ]
            assert len(inside) == 1  # exactly k inside edges on the cycle
    assert wins >= 11


def test_huge_bias_graceful_loss():
    G = complete_graph(8)
    b = G.m  # Breaker swallows the board each round
    maker = maker_dirac_strategy(G, b, seed=0)
    t = play_hamiltonicity_game(G, (1, b), maker, breaker_random(), seed=0)
    assert t.winner == BREAKER
    assert t.forfeited_by is None


def test_goal_checker_finds_planted_cycle():
    G = complete_graph(6)
    checker = hamiltonicity_goal_checker(G)
    edges = G.edges()
    eidx = {e: i for i, e in enumerate(edges)}
    cycle_edges = {eidx[(min(i, (i + 1) % 6), max(i, (i + 1) % 6))] for i in range(6)}
    assert checker(cycle_edges) is not None
    assert checker(set(list(cycle_edges)[:4])) is None


def test_random_hosts_against_random_breaker():
    wins = 0
    for seed in range(20):
        G = random_dirac_graph(9 + seed % 4, seed=seed)
        maker = maker_dirac_strategy(G, 1, seed=seed)
        t = play_hamiltonicity_game(G, (1, 1), maker, breaker_random(), seed=seed)
        wins += t.winner == MAKER
    assert wins >= 18  # engine-quality regression floor


def test_report_flags_heuristics():
    maker = maker_dirac_strategy(complete_graph(8), 1, seed=0)
    assert any("heuristic" in f for f in maker.report.heuristic_flags)
    assert maker.report.classification_case is not None
