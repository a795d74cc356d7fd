"""Maker-Breaker games: potentials, exhaustive values, combinators, and the
composite Hamiltonicity strategy.

Run:  python demos/05_maker_breaker.py
"""

from diracham.aux_hypergraphs import aux_hypergraphs
from diracham.dirac_strategy import (
    breaker_greedy_block,
    maker_dirac_strategy,
    play_hamiltonicity_game,
)
from diracham.games import (
    BREAKER,
    MAKER,
    Board,
    WinningFamily,
    beck_criterion,
    exhaustive_value,
    minimax_strategy,
    play,
)
from diracham.generators import complete_graph, two_cliques_matching

# Beck's criterion: sum over winning sets of (1+q)^(-|B|/p) below 1/(1+q)
# guarantees a Breaker win; the greedy potential Breaker realizes it
F = WinningFamily.of([{0, 1}, {2, 3}, {0, 2, 4}])
value, flag = beck_criterion(F, 1, 1)
print(f"beck value = {value:.3f} < 1/2: {flag}")
print("exhaustive value (1:1, Maker first):", exhaustive_value(5, F, (1, 1), MAKER))

# a tiny game under optimal play on both sides
F2 = WinningFamily.of([{0, 1}, {0, 2}])
t = play(Board(3), minimax_strategy(F2, MAKER), minimax_strategy(F2, BREAKER), family=F2)
print("double threat {0,1},{0,2}:", t.winner, "via", t.certificate)

# the auxiliary hypergraphs behind the expander-building games, explicitly
rep = aux_hypergraphs(complete_graph(8), "H1", {"i": 1, "r": 1, "epsilon": 0.5})
print(f"\nH1 on K8 (i=1, r=1): {rep.hyperedge_count} hyperedges, min size "
      f"{rep.min_hyperedge_size} (guarantee ni/7 = {rep.size_guarantee:.2f})")

# the composite strategy: dense play on K8, split play on two cliques + PM
for name, G in (("K8", complete_graph(8)), ("two K6 + matching", two_cliques_matching(12))):
    maker = maker_dirac_strategy(G, 1, seed=0)
    t = play_hamiltonicity_game(G, (1, 1), maker, breaker_greedy_block(G), seed=0)
    print(f"\n{name}: play case {maker.report.play_case!r} -> {t.winner}")
    if t.certificate:
        print("   Hamilton cycle:", t.certificate)
    if maker.report.crossing_terminals:
        print("   crossing edges used:", maker.report.crossing_terminals)
