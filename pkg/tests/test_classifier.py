import random
from itertools import combinations

import pytest

from diracham.classifier import (
    DENSE_CROSSING,
    NEAR_BIPARTITE,
    NEAR_DISCONNECTED,
    Classification,
    ClassifierParams,
    classify,
    sparsest_halfset_pair,
    verify_classification,
)
from diracham.errors import BudgetError, DomainError, PreconditionError
from diracham.generators import (
    complete_bipartite,
    complete_graph,
    random_dirac_graph,
    random_graph,
    two_cliques_matching,
)
from diracham.graph import Graph, pair_count


def brute_force_sparsest(G):
    """Oracle: full enumeration over all (A, B) half-set pairs."""
    n = G.n
    sizes = {n // 2, (n + 1) // 2}
    best = None
    for ka in sizes:
        for A in combinations(range(n), ka):
            for kb in sizes:
                for B in combinations(range(n), kb):
                    v = pair_count(G, A, B)
                    if best is None or v < best:
                        best = v
    return best


def test_params_validation():
    ClassifierParams(alpha=0.001, gamma=0.032)
    with pytest.raises(DomainError):
        ClassifierParams(alpha=0.01, gamma=0.1)  # alpha > 1/320
    with pytest.raises(DomainError):
        ClassifierParams(alpha=0.002, gamma=0.05)  # gamma < 32 alpha
    with pytest.raises(DomainError):
        ClassifierParams(alpha=0.001, gamma=0.2)  # gamma > 1/10


def test_sparsest_k12_value():
    # K12: the minimum is 30, attained at A = B (full enumeration agrees)
    K12 = complete_graph(12)
    pair = sparsest_halfset_pair(K12, mode="exact")
    assert pair.crossing == 30
    K8 = complete_graph(8)
    assert sparsest_halfset_pair(K8, mode="exact").crossing == brute_force_sparsest(K8) == 12


def test_sparsest_structured_instances():
    G = two_cliques_matching(10)
    pair = sparsest_halfset_pair(G, mode="exact")
    assert pair.crossing == 5
    assert {frozenset(pair.A), frozenset(pair.B)} == {
        frozenset(range(5)),
        frozenset(range(5, 10)),
    }
    B55 = complete_bipartite(5, 5)
    pair = sparsest_halfset_pair(B55, mode="exact")
    assert pair.crossing == 0
    assert pair.A == pair.B  # one independent side


def test_sparsest_exact_matches_brute_force_small():
    rng = random.Random(3)
    for trial in range(25):
        n = rng.choice([4, 5, 6, 7, 8])
        G = random_graph(n, rng.uniform(0.3, 0.8), seed=500 + trial)
        assert sparsest_halfset_pair(G, mode="exact").crossing == brute_force_sparsest(G)


def test_exact_budget_error():
    with pytest.raises(BudgetError):
        sparsest_halfset_pair(complete_graph(13), mode="exact")


def test_local_search_dominated_by_exact():
    rng = random.Random(4)
    for trial in range(20):
        n = rng.randrange(6, 11)
        G = random_graph(n, rng.uniform(0.3, 0.8), seed=600 + trial)
        exact = sparsest_halfset_pair(G, mode="exact").crossing
        local = sparsest_halfset_pair(G, mode="local_search", seed=trial).crossing
        assert exact <= local


def test_classify_k12_dense_crossing():
    params = ClassifierParams(alpha=1 / 320, gamma=0.1)
    cls = classify(complete_graph(12), params, mode="exact")
    assert cls.case == DENSE_CROSSING and not cls.heuristic
    assert verify_classification(complete_graph(12), cls, params)


def test_classify_requires_dirac():
    params = ClassifierParams(alpha=0.001, gamma=0.032)
    from diracham.generators import two_cliques_bridge

    with pytest.raises(PreconditionError):
        classify(two_cliques_bridge(10), params)


def test_classify_complete_bipartite_near_bipartite():
    params = ClassifierParams(alpha=0.001, gamma=0.032)
    G = complete_bipartite(8, 8)
    cls = classify(G, params, mode="local_search", seed=1)
    assert cls.case == NEAR_BIPARTITE
    assert cls.diagnostics["cross_edges"] == 64  # n^2 / 4
    assert verify_classification(G, cls, params)


def test_classify_near_disconnected_where_dichotomy_triggers():
    # two K100 + perfect matching at alpha = 1/320: crossing n/2 = 100 is
    # below alpha n^2 = 125, so the sparse-cut branch genuinely runs
    params = ClassifierParams(alpha=1 / 320, gamma=0.1)
    G = two_cliques_matching(200)
    cls = classify(G, params, mode="local_search", seed=0)
    assert cls.case == NEAR_DISCONNECTED
    assert cls.A in (frozenset(range(100)), frozenset(range(100, 200)))
    assert cls.diagnostics["cross_edges"] == 100
    assert verify_classification(G, cls, params)


def test_classify_two_cliques_matching_desk_scale_is_dense():
    # at alpha=0.001 and n <= 64 the crossing n/2 exceeds alpha n^2, so the
    # trichotomy's first case holds on this family at desk scale
    params = ClassifierParams(alpha=0.001, gamma=0.032)
    G = two_cliques_matching(12)
    cls = classify(G, params, mode="exact")
    assert cls.case == DENSE_CROSSING
    assert verify_classification(G, cls, params)


def test_verify_rejects_wrong_claims():
    params = ClassifierParams(alpha=0.001, gamma=0.032)
    B88 = complete_bipartite(8, 8)
    # NearDisconnected claim on K_{8,8} is false: G[A] is empty inside
    bogus = Classification(NEAR_DISCONNECTED, frozenset(range(8)))
    assert not verify_classification(B88, bogus, params)
    # NearBipartite claim with A = one clique side: cross edges far too few
    G = two_cliques_matching(16)
    bogus = Classification(NEAR_BIPARTITE, frozenset(range(8)))
    assert not verify_classification(G, bogus, params)


def test_classify_output_always_verifies_on_random_dirac():
    params = ClassifierParams(alpha=0.001, gamma=0.032)
    from diracham.errors import ClassificationFailedError

    for trial in range(15):
        G = random_dirac_graph(random.Random(trial).randrange(8, 13), seed=trial)
        try:
            cls = classify(G, params, mode="exact")
        except ClassificationFailedError:
            continue  # allowed: the error path carries diagnostics
        assert verify_classification(G, cls, params)


def lopsided_near_bipartite(n: int = 200) -> Graph:
    """Dirac graph whose dense-cut repair genuinely sheds vertices.

    V1 = 0..n/2-1, V2 = n/2..n-1.  Vertices 0 and 1 have only n/4 cross
    neighbors each (so the repair pulls them into the V2 side first) and all
    of V1 as internal neighbors (so the shedding loop must push them back
    out).  V2 carries an internal perfect matching to stay Dirac.
    """
    h = n // 2
    q = n // 4
    edges = set()
    for u in (0, 1):
        for v in range(h):
            if v != u and not (u == 1 and v == 0):
                edges.add((min(u, v), max(u, v)))
    edges.add((0, 1))
    for u in range(2, h):
        for v in range(h, n):
            edges.add((u, v))
    for i in range(q):  # vertex 0 covers the first V2 half, vertex 1 the rest
        edges.add((0, h + i))
        edges.add((1, h + q + i))
    for i in range(0, h, 2):  # internal matching inside V2
        edges.add((h + i, h + i + 1))
    return Graph(n, sorted(edges))


def test_repair_loop_sheds_and_never_moves_twice():
    params = ClassifierParams(alpha=1 / 320, gamma=0.1)
    G = lopsided_near_bipartite(200)
    from diracham.graph import is_dirac

    assert is_dirac(G)
    cls = classify(G, params, mode="local_search", seed=2)
    assert cls.case == NEAR_BIPARTITE
    moved = cls.diagnostics.get("moved", [])
    assert moved == [0, 1]  # both high-internal-degree vertices shed, once each
    assert verify_classification(G, cls, params)
