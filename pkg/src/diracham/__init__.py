"""diracham: desk-scale machinery for robust Hamiltonicity of Dirac graphs.

Subpackages by capability:
  graph            immutable graphs, counting primitives, certificates, I/O
  generators       constructed graph families
  classifier       structural trichotomy of Dirac graphs with witnesses
  rotation         Posa rotation-extension engine (general graphs)
  bipartite        special/matched frames and the bipartite rotation variant
  expanders        half-expander / expander / bipartite-expander certification
  random_subgraph  G_p sampling, threshold sweeps, tail bounds
  games            Maker-Breaker boards, potentials, minimax, combinators
  dirac_strategy   the composite Maker strategy and blocking Breakers
  oracle           exact backtracking Hamiltonicity (small n)
  cli / service    command-line front end and the local game session service
"""

from .graph import (
    Graph,
    induced_subgraph,
    is_dirac,
    min_degree,
    neighborhood,
    pair_count,
    verify_hamilton_cycle,
    verify_hamilton_path,
)
from .rotation import (
    Budget,
    EndpointAtlas,
    PathState,
    endpoint_closure,
    extend_or_close,
    find_hamilton_cycle,
    find_path_between,
    rotate,
)

__all__ = [
    "Graph",
    "pair_count",
    "neighborhood",
    "min_degree",
    "is_dirac",
    "induced_subgraph",
    "verify_hamilton_cycle",
    "verify_hamilton_path",
    "PathState",
    "EndpointAtlas",
    "Budget",
    "rotate",
    "extend_or_close",
    "endpoint_closure",
    "find_hamilton_cycle",
    "find_path_between",
]
