"""Global structural graph features used alongside subgraph frequencies
in classification: component sizes, k-cores, degeneracy, and k-braces.

The k-brace (following the definition in the social-graph literature)
prunes edges whose embeddedness, the number of common neighbors of the
endpoints, is below k until none remain, then takes the 2-core. "Size"
means node count throughout; edge counts are available from the returned
subgraphs if a caller prefers that convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph, induced_subgraph

__all__ = [
    "GlobalFeatures",
    "core_nodes",
    "k_core",
    "degeneracy",
    "brace_edges",
    "k_brace",
    "component_stats",
    "global_features",
    "GLOBAL_FEATURE_NAMES",
]


@dataclass(frozen=True)
class GlobalFeatures:
    """The 16 global features: two largest component sizes, k-core sizes
    (k=0..3), k-core component counts (k=0..2), degeneracy, k-brace sizes
    and component counts (k=1..3)."""

    largest_components: tuple[int, int]
    kcore_sizes: tuple[int, int, int, int]
    kcore_components: tuple[int, int, int]
    degeneracy: int
    kbrace_sizes: tuple[int, int, int]
    kbrace_components: tuple[int, int, int]

    def as_vector(self) -> np.ndarray:
        return np.array(
            list(self.largest_components)
            + list(self.kcore_sizes)
            + list(self.kcore_components)
            + [self.degeneracy]
            + list(self.kbrace_sizes)
            + list(self.kbrace_components),
            dtype=float,
        )


GLOBAL_FEATURE_NAMES = (
    "comp1",
    "comp2",
    "core0_size",
    "core1_size",
    "core2_size",
    "core3_size",
    "core0_comps",
    "core1_comps",
    "core2_comps",
    "degeneracy",
    "brace1_size",
    "brace2_size",
    "brace3_size",
    "brace1_comps",
    "brace2_comps",
    "brace3_comps",
)


def core_nodes(g: Graph, k: int) -> list[int]:
    """Nodes (original labels) of the maximal subgraph with minimum degree
    >= k, by iteratively peeling low-degree nodes. The fixed point is
    unique, so peeling order does not matter."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    degree = list(g.degrees)
    alive = [True] * g.n
    queue = [v for v in range(g.n) if degree[v] < k]
    while queue:
        v = queue.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for w in g.neighbors(v):
            if alive[w]:
                degree[w] -= 1
                if degree[w] < k:
                    queue.append(w)
    return [v for v in range(g.n) if alive[v]]


def k_core(g: Graph, k: int) -> Graph:
    """The k-core as a graph, relabeled to contiguous ids; use
    ``core_nodes`` when original labels matter."""
    return induced_subgraph(g, core_nodes(g, k))


def degeneracy(g: Graph) -> int:
    """Largest k with a non-empty k-core, read off the peeling order."""
    degree = list(g.degrees)
    alive = set(range(g.n))
    best = 0
    while alive:
        v = min(alive, key=lambda u: degree[u])
        best = max(best, degree[v])
        alive.remove(v)
        for w in g.neighbors(v):
            if w in alive:
                degree[w] -= 1
    return best


def brace_edges(g: Graph, k: int) -> frozenset[tuple[int, int]]:
    """Edges (original labels) surviving the k-brace: iterated deletion of
    edges with fewer than k common endpoints-neighbors, then the 2-core."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    changed = True
    while changed:
        changed = False
        for u in range(g.n):
            for v in list(adj[u]):
                if u < v and len(adj[u] & adj[v]) < k:
                    adj[u].discard(v)
                    adj[v].discard(u)
                    changed = True
    pruned = Graph.from_edges(
        g.n, [(u, v) for u in range(g.n) for v in adj[u] if u < v]
    )
    keep = set(core_nodes(pruned, 2))
    return frozenset(
        (u, v) for u, v in pruned.edges if u in keep and v in keep
    )


def k_brace(g: Graph, k: int) -> Graph:
    """The k-brace as a graph on its incident nodes, relabeled."""
    edges = brace_edges(g, k)
    nodes = sorted({v for e in edges for v in e})
    index = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(
        len(nodes), [(index[u], index[v]) for u, v in edges]
    )


def _component_sizes(g: Graph) -> list[int]:
    seen = [False] * g.n
    sizes = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        size = 0
        while stack:
            v = stack.pop()
            size += 1
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        sizes.append(size)
    return sorted(sizes, reverse=True)


def component_stats(g: Graph) -> tuple[list[int], int]:
    """Component sizes in descending order (isolated nodes are size-1
    components) and the component count."""
    sizes = _component_sizes(g)
    return sizes, len(sizes)


def global_features(g: Graph) -> GlobalFeatures:
    """Assemble the full 16-value global feature vector."""
    sizes, _ = component_stats(g)
    two = (sizes + [0, 0])[:2]
    cores = [k_core(g, k) for k in range(4)]
    braces = [k_brace(g, k) for k in (1, 2, 3)]
    return GlobalFeatures(
        largest_components=(two[0], two[1]),
        kcore_sizes=tuple(c.n for c in cores),
        kcore_components=tuple(len(_component_sizes(c)) for c in cores[:3]),
        degeneracy=degeneracy(g),
        kbrace_sizes=tuple(b.n for b in braces),
        kbrace_components=tuple(len(_component_sizes(b)) for b in braces),
    )
