"""The structural trichotomy of Dirac graphs, constructively.

Every Dirac graph either has dense crossings between all half-set pairs, or
carries a witness set A making it near-disconnected (sparse cut, dense
sides) or near-bipartite (dense cut).  The interesting cases only trigger
when alpha * n^2 clears the sparsest crossing, which at the maximum allowed
alpha = 1/320 needs n in the hundreds - the demo shows both regimes.

Run:  python demos/02_classifier.py
"""

from diracham.classifier import ClassifierParams, classify, sparsest_halfset_pair
from diracham.generators import complete_bipartite, complete_graph, two_cliques_matching

params = ClassifierParams(alpha=0.001, gamma=0.032)

# desk scale: K12 and the clique pair both have crossings above alpha n^2
for name, G in (("K12", complete_graph(12)), ("two K6 + matching", two_cliques_matching(12))):
    pair = sparsest_halfset_pair(G, mode="exact")
    cls = classify(G, params, mode="exact")
    print(f"{name}: sparsest crossing {pair.crossing} vs alpha*n^2 = {params.alpha*144:.3f}"
          f" -> {cls.case}")

# complete bipartite: a half set is independent, so the dichotomy fires and
# the repair walks straight to the bipartition
B = complete_bipartite(8, 8)
cls = classify(B, params, mode="local_search", seed=1)
print(f"K_8,8 -> {cls.case}, witness A = {sorted(cls.A)}")
print("   diagnostics:", {k: cls.diagnostics[k] for k in ("cross_edges", "cross_min_degree")})

# large scale: at n=200 and alpha=1/320 the sparse cut genuinely triggers
big = ClassifierParams(alpha=1 / 320, gamma=0.1)
G = two_cliques_matching(200)
cls = classify(G, big, mode="local_search", seed=0)
print(f"two K100 + matching (n=200) -> {cls.case}")
print("   cut size:", cls.diagnostics["cross_edges"], "<= 6 alpha n^2 =", 6 * big.alpha * 200**2)
