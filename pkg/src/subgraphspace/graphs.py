"""Undirected simple graphs on labeled nodes 0..n-1, and the primitive
operations everything else builds on: density, complement, induced
subgraphs, and canonical codes for isomorphism classification.

Graphs are immutable. Canonicalization is brute force over all node
permutations, which is exact and fast for the small node counts (k <= 8)
this library deals in.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Graph",
    "CanonicalCode",
    "edge_density",
    "complement",
    "induced_subgraph",
    "canonical_code",
    "automorphism_count",
    "permute",
    "graph_from_mask",
    "empty_graph",
    "complete_graph",
    "path_graph",
    "cycle_graph",
    "complete_bipartite",
    "pair_order",
]

MAX_CANONICAL_NODES = 8


def pair_order(k: int) -> list[tuple[int, int]]:
    """Node pairs of a k-node graph in lexicographic order.

    This order fixes the bit layout of adjacency masks and canonical codes:
    pair i occupies bit (npairs - 1 - i), so the first pair is the most
    significant bit and integer comparison of codes equals lexicographic
    comparison of the bit-strings.
    """
    return list(itertools.combinations(range(k), 2))


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Isomorphism invariant: the minimal upper-triangular adjacency
    bit-string over all k! node relabelings."""

    k: int
    bits: int

    @property
    def bitstring(self) -> str:
        return format(self.bits, f"0{comb(self.k, 2)}b") if self.k >= 2 else ""

    def __str__(self) -> str:
        return f"{self.k}:{self.bitstring}"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: n nodes labeled 0..n-1, edges as a frozenset
    of (u, v) pairs with u < v. Use ``Graph.from_edges`` to normalize input."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"node count must be nonnegative, got {self.n}")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        normalized = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            normalized.add((min(u, v), max(u, v)))
        return cls(n, frozenset(normalized))

    @cached_property
    def adjacency_bits(self) -> tuple[int, ...]:
        """Per-node neighbor sets as bitmasks; bit w of entry v means v~w."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self.adjacency_bits)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adjacency_bits[u] >> v) & 1 == 1

    def neighbors(self, v: int) -> list[int]:
        a = self.adjacency_bits[v]
        return [w for w in range(self.n) if (a >> w) & 1]

    def common_neighbor_count(self, u: int, v: int) -> int:
        return (self.adjacency_bits[u] & self.adjacency_bits[v]).bit_count()

    def adjacency_matrix(self) -> np.ndarray:
        """Dense boolean adjacency matrix (used by the census fast path)."""
        a = np.zeros((self.n, self.n), dtype=bool)
        if self.edges:
            idx = np.array(sorted(self.edges), dtype=np.int64)
            a[idx[:, 0], idx[:, 1]] = True
            a[idx[:, 1], idx[:, 0]] = True
        return a

    def edge_mask(self) -> int:
        """Upper-triangular adjacency encoded per ``pair_order(n)``."""
        pairs = pair_order(self.n)
        npairs = len(pairs)
        mask = 0
        for i, (u, v) in enumerate(pairs):
            if self.has_edge(u, v):
                mask |= 1 << (npairs - 1 - i)
        return mask

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"


def graph_from_mask(k: int, mask: int) -> Graph:
    """Inverse of ``Graph.edge_mask`` for k-node graphs."""
    pairs = pair_order(k)
    npairs = len(pairs)
    edges = [
        pairs[i] for i in range(npairs) if (mask >> (npairs - 1 - i)) & 1
    ]
    return Graph(k, frozenset(edges))


def edge_density(g: Graph) -> float:
    """Fraction of node pairs that are edges."""
    if g.n < 2:
        raise ValueError(f"edge density undefined for n={g.n} < 2")
    return g.edge_count / comb(g.n, 2)


def complement(g: Graph) -> Graph:
    all_pairs = set(pair_order(g.n))
    return Graph(g.n, frozenset(all_pairs - g.edges))


def induced_subgraph(g: Graph, nodes: Sequence[int]) -> Graph:
    """Subgraph on the given nodes, relabeled 0..len(nodes)-1 in input order."""
    if len(set(nodes)) != len(nodes):
        raise ValueError(f"duplicate nodes in subset {list(nodes)}")
    for v in nodes:
        if not (0 <= v < g.n):
            raise ValueError(f"node {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(nodes)}
    edges = [
        (index[u], index[v])
        for u, v in g.edges
        if u in index and v in index
    ]
    return Graph.from_edges(len(nodes), edges)


def permute(g: Graph, sigma: Sequence[int]) -> Graph:
    """Relabel nodes: node v becomes sigma[v]."""
    return Graph.from_edges(g.n, [(sigma[u], sigma[v]) for u, v in g.edges])


def canonical_code(g: Graph) -> CanonicalCode:
    """Minimal edge mask over all node permutations.

    Two graphs on equal node counts are isomorphic iff their codes match.
    Exhaustive over n! permutations, so n is capped at 8.
    """
    if g.n > MAX_CANONICAL_NODES:
        raise ValueError(
            f"canonical code supports n <= {MAX_CANONICAL_NODES}, got {g.n}"
        )
    if g.n < 2:
        return CanonicalCode(g.n, 0)
    pairs = pair_order(g.n)
    npairs = len(pairs)
    adj = g.adjacency_bits
    best = None
    for sigma in itertools.permutations(range(g.n)):
        mask = 0
        for i, (u, v) in enumerate(pairs):
            if (adj[sigma[u]] >> sigma[v]) & 1:
                mask |= 1 << (npairs - 1 - i)
        if best is None or mask < best:
            best = mask
    return CanonicalCode(g.n, best)


def automorphism_count(g: Graph) -> int:
    """Number of permutations mapping the graph onto itself."""
    if g.n > MAX_CANONICAL_NODES:
        raise ValueError(
            f"automorphism count supports n <= {MAX_CANONICAL_NODES}, got {g.n}"
        )
    adj = g.adjacency_bits
    pairs = pair_order(g.n)
    count = 0
    for sigma in itertools.permutations(range(g.n)):
        if all(
            ((adj[sigma[u]] >> sigma[v]) & 1) == ((adj[u] >> v) & 1)
            for u, v in pairs
        ):
            count += 1
    return count if g.n > 0 else 1


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(pair_order(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(
        a + b, [(i, a + j) for i in range(a) for j in range(b)]
    )
