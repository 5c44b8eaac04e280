import numpy as np
import pytest

from subgraphspace.features import (
    brace_edges,
    component_stats,
    core_nodes,
    degeneracy,
    global_features,
    k_brace,
    k_core,
)
from subgraphspace.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
)

from conftest import random_graph


def test_k_core_examples():
    assert k_core(cycle_graph(5), 2).n == 5
    star = Graph.from_edges(10, [(0, i) for i in range(1, 10)])
    assert k_core(star, 2).n == 0
    k4_pendant = Graph.from_edges(
        5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]
    )
    assert sorted(core_nodes(k4_pendant, 3)) == [0, 1, 2, 3]


def test_degeneracy_examples():
    assert degeneracy(complete_graph(4)) == 3
    assert degeneracy(path_graph(6)) == 1
    assert degeneracy(cycle_graph(6)) == 2
    assert degeneracy(empty_graph(4)) == 0


def test_k_brace_examples():
    assert k_brace(complete_graph(5), 3).n == 5
    assert k_brace(cycle_graph(6), 1).n == 0
    assert k_brace(complete_graph(4), 2).n == 4


def test_component_stats():
    two_triangles = Graph.from_edges(
        6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
    )
    sizes, count = component_stats(two_triangles)
    assert sizes == [3, 3] and count == 2
    sizes, count = component_stats(cycle_graph(7))
    assert count == 1
    k3_iso = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2)])
    sizes, count = component_stats(k3_iso)
    assert sizes == [3, 1, 1] and count == 3


def test_singleton_count_from_core_components():
    # components in the 0-core minus components in the 1-core = singletons
    g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2)])
    gf = global_features(g)
    assert gf.kcore_components[0] - gf.kcore_components[1] == 3


def test_global_features_empty_graph():
    gf = global_features(empty_graph(5))
    assert gf.largest_components == (1, 1)
    assert gf.kcore_sizes == (5, 0, 0, 0)
    assert gf.degeneracy == 0
    assert gf.kbrace_sizes == (0, 0, 0)
    assert len(gf.as_vector()) == 16


def test_global_features_complete_graph():
    gf = global_features(complete_graph(5))
    assert gf.degeneracy == 4
    assert gf.kcore_sizes == (5, 5, 5, 5)
    assert gf.kbrace_sizes == (5, 5, 5)
    assert gf.kcore_components == (1, 1, 1)


def test_global_features_c5():
    gf = global_features(cycle_graph(5))
    assert gf.degeneracy == 2
    assert gf.kbrace_sizes == (0, 0, 0)


def test_core_nesting(rng):
    for _ in range(15):
        g = random_graph(rng, int(rng.integers(5, 25)), rng.uniform(0.1, 0.6))
        previous = set(range(g.n))
        for k in range(5):
            nodes = set(core_nodes(g, k))
            assert nodes <= previous
            previous = nodes


def test_kcore_size_invariants(rng):
    for _ in range(10):
        g = random_graph(rng, 15, rng.random())
        gf = global_features(g)
        assert gf.kcore_sizes[0] == g.n
        assert all(
            a >= b for a, b in zip(gf.kcore_sizes, gf.kcore_sizes[1:])
        )
        # degeneracy equals the largest k with a non-empty core
        assert core_nodes(g, gf.degeneracy)
        assert not core_nodes(g, gf.degeneracy + 1)


def test_brace_edge_monotone(rng):
    for _ in range(10):
        g = random_graph(rng, 14, rng.uniform(0.3, 0.8))
        e1, e2, e3 = (brace_edges(g, k) for k in (1, 2, 3))
        assert e3 <= e2 <= e1 <= g.edges


def _core_oracle(g: Graph, k: int, order: list[int]) -> set[int]:
    """Peel in a caller-chosen order; the fixed point must not depend on it."""
    alive = set(range(g.n))
    changed = True
    while changed:
        changed = False
        for v in order:
            if v in alive and sum(1 for w in g.neighbors(v) if w in alive) < k:
                alive.discard(v)
                changed = True
    return alive


def test_core_order_independence(rng):
    for _ in range(5):
        g = random_graph(rng, 12, 0.4)
        for k in (1, 2, 3):
            expect = set(core_nodes(g, k))
            for _ in range(20):
                order = rng.permutation(12).tolist()
                assert _core_oracle(g, k, order) == expect


def test_brace_order_independence(rng):
    # same fixed point under randomized edge-deletion sweeps
    def brace_oracle(g, k, rng):
        adj = [set(g.neighbors(v)) for v in range(g.n)]
        while True:
            edges = [
                (u, v) for u in range(g.n) for v in adj[u] if u < v
            ]
            rng.shuffle(edges)
            deleted = False
            for u, v in edges:
                if v in adj[u] and len(adj[u] & adj[v]) < k:
                    adj[u].discard(v)
                    adj[v].discard(u)
                    deleted = True
            if not deleted:
                break
        pruned = Graph.from_edges(
            g.n, [(u, v) for u in range(g.n) for v in adj[u] if u < v]
        )
        keep = set(core_nodes(pruned, 2))
        return frozenset(
            (u, v) for u, v in pruned.edges if u in keep and v in keep
        )

    for _ in range(5):
        g = random_graph(rng, 12, 0.5)
        for k in (1, 2):
            expect = brace_edges(g, k)
            for _ in range(5):
                assert brace_oracle(g, k, rng) == expect


def test_feature_validation():
    with pytest.raises(ValueError):
        k_core(complete_graph(3), -1)
    with pytest.raises(ValueError):
        k_brace(complete_graph(3), 0)
