"""Expansion certificates and the random-subgraph threshold experiment.

Run:  python demos/04_expanders_and_thresholds.py
"""

from diracham.expanders import ExpanderParams, check_expander, check_half_expander
from diracham.generators import complete_graph, star_graph, two_cliques_bridge, two_cliques_matching
from diracham.random_subgraph import (
    chernoff_bound,
    clogn_grid,
    hamiltonicity_sweep,
    hypergeometric_bound,
    sweep_rows_csv,
)
from diracham.rotation import Budget

# plain expander: cliques expand, stars do not
print("K10 expander(eps=.25, r=2):", check_expander(complete_graph(10), ExpanderParams(0.25, 2)).verdict)
rep = check_expander(star_graph(9), ExpanderParams(0.25, 2))
print("star  expander(eps=.25, r=2):", rep.verdict, "witness", rep.witness, "condition", rep.condition)

# the half-expander's pair condition catches the bridge bottleneck: two
# near-half sets with at most 2n crossing pairs
rep = check_half_expander(two_cliques_bridge(10), ExpanderParams(1e-6, 2))
print("two K5 + bridge half-expander:", rep.verdict, "condition", rep.condition)
print("   hypothesis slack at desk n (r - 16 eps^-3 log n):",
      f"{rep.details['re_hypothesis_slack']:.3g}")

# explicit tail bounds
print("\nchernoff_bound(100, 0.5, 10)  =", f"{chernoff_bound(100, 0.5, 10):.4f}")
print("hypergeometric_bound(10, 5)   =", f"{hypergeometric_bound(10, 5):.5f}")

# the threshold sweep: coupled uniforms make per-trial success monotone in
# p exactly; the crossing region sits around log n / n
G = two_cliques_matching(60)
ps = clogn_grid(60, [0.5, 1, 2, 4, 8])
res = hamiltonicity_sweep(G, ps, trials=60, budget=Budget(6, 40_000), seed=11,
                          graph_desc="two K30 + matching")
print("\nsweep on two K30 + matching (p = c log n / n):")
print(sweep_rows_csv(res))
