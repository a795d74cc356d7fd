"""Special frames, Hall matchings, and proper Hamilton cycles.

A near-bipartite graph with |V1| = |V2| + k needs exactly k edges inside V1
on any Hamilton cycle.  The frame machinery designates k disjoint inside
edges as special, matches the rest of V1 to V2, and searches over proper
paths only - paths whose non-crossing edges are exactly special edges.

Run:  python demos/03_bipartite_frames.py
"""

from diracham.bipartite import (
    build_matched_frame,
    find_proper_hamilton_cycle,
    proper_endpoint_closure,
)
from diracham.generators import complete_bipartite
from diracham.graph import Graph

# k = 0: plain bipartite, the matching pairs the sides
K33 = complete_bipartite(3, 3)
mf = build_matched_frame(K33, {0, 1, 2}, {3, 4, 5}, [])
res = find_proper_hamilton_cycle(K33, mf, seed=0)
print("K_3,3 proper Hamilton cycle:", res.cycle)

# k = 1: K_{4,3} plus one inside edge; the cycle must use it exactly once
base = complete_bipartite(4, 3)
G = Graph(7, list(base.edges()) + [(0, 1)])
mf = build_matched_frame(G, range(4), range(4, 7), [(0, 1)])
print("\nframe: special vertex", sorted(mf.frame.S_V), "special edge", mf.frame.S_E)
print("matching f:", {k: v for k, v in sorted(mf.f.items()) if k < 4})
res = find_proper_hamilton_cycle(G, mf, seed=0)
cyc = res.cycle
inside = [
    (cyc[i], cyc[(i + 1) % len(cyc)])
    for i in range(len(cyc))
    if (cyc[i] < 4) == (cyc[(i + 1) % len(cyc)] < 4)
]
print("proper Hamilton cycle:", cyc)
print("non-crossing edges on it:", inside, "(exactly the special edge)")

# the restricted rotation closure: pivots stay inside V1'' so special edges
# never break, and S_P lives in V2.  Grow a maximal proper path first.
from diracham.bipartite import proper_extensions

v2 = min(mf.frame.V2)
path = (v2, mf.f[v2])
while True:
    exts = proper_extensions(G, mf, path)
    if not exts:
        break
    path = exts[0]
reached, _ = proper_endpoint_closure(G, mf, path)
print("\nmaximal proper path:", path)
print("S_P (all in V2):", sorted(reached))
