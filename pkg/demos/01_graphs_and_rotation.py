"""Walk through the graph primitives and the rotation-extension engine.

Run:  python demos/01_graphs_and_rotation.py
"""

from diracham.generators import (
    complete_bipartite,
    complete_graph,
    two_cliques_bridge,
)
from diracham.graph import neighborhood, pair_count, verify_hamilton_path
from diracham.rotation import PathState, endpoint_closure, find_hamilton_cycle, rotate

# counting primitives: e(X, Y) counts ordered pairs, so e(X, X) = 2 e(X)
K4 = complete_graph(4)
print("e({0,1},{2,3}) in K4  =", pair_count(K4, {0, 1}, {2, 3}))
print("e(V,V) in K4          =", pair_count(K4, range(4), range(4)), "(= 2m)")
print("N({0}) in K4          =", sorted(neighborhood(K4, {0})))

# a single rotation: fix one endpoint, pivot from the other
G = complete_graph(5)
ps = PathState(seq=(0, 1, 2, 3, 4))
rotated = rotate(ps, G, 1)  # pivot v_1, breaks {1,2}, new endpoint 2
print("\nrotate (0,1,2,3,4) at pivot index 1 ->", rotated.seq)
print("rotation log:", rotated.rotations)

# the endpoint atlas on the classic tight example: two cliques + one bridge
# only the first half of the path can ever become a start point, so
# |S_P| = n/2 - 1
n = 10
bridge = two_cliques_bridge(n)
path = tuple(range(n))
assert verify_hamilton_path(bridge, path)
atlas = endpoint_closure(bridge, PathState(seq=path))
print(f"\ntwo K5 + bridge: S_P = {sorted(atlas.S_P)}  (|S_P| = n/2 - 1 = {n//2-1})")

# the bipartite near-miss: S_P is confined to the larger side
K54 = complete_bipartite(5, 4)
seq = (0, 5, 1, 6, 2, 7, 3, 8, 4)
atlas = endpoint_closure(K54, PathState(seq=seq))
print("K_{5,4}: S_P =", sorted(atlas.S_P), "(inside the 5-side)")

# and the search: any Dirac graph yields a certificate
res = find_hamilton_cycle(complete_graph(9), seed=3)
print("\nHamilton cycle of K9:", res.cycle, f"({res.steps} steps)")
