"""Catalogs of unlabeled k-node graphs (k <= 5) and the combinatorial
tables built on them: automorphism counts, labeled extension counts,
pairwise subgraph frequencies, and the one-edge transition structure of
the graph-space random walk.

Catalog order is (edge count ascending, canonical code ascending). Index 0
is the empty graph and the last index is the complete graph. Frequency
vectors, LP columns, and CSV headers all use this order, so it must never
change.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .graphs import (
    CanonicalCode,
    Graph,
    automorphism_count,
    graph_from_mask,
    pair_order,
)

__all__ = [
    "GraphClass",
    "Catalog",
    "AddTransition",
    "DeleteTransition",
    "TransitionStructure",
    "build_catalog",
    "aut_count",
    "ext_count",
    "pairwise_frequency",
    "transition_structure",
]

MAX_CATALOG_K = 5


@dataclass(frozen=True)
class GraphClass:
    """One isomorphism class of k-node graphs."""

    index: int
    representative: Graph
    edge_count: int
    aut: int
    code: CanonicalCode

    @property
    def labelings(self) -> int:
        """Number of distinct labeled copies, k!/aut."""
        return factorial(self.representative.n) // self.aut


@dataclass(frozen=True)
class AddTransition:
    """All labeled single-edge additions src -> dst whose added pair has
    exactly ``closures`` common neighbors, counted per labeled copy of src."""

    src: int
    dst: int
    closures: int
    count: int


@dataclass(frozen=True)
class DeleteTransition:
    """Labeled single-edge deletions src -> dst, counted per labeled copy."""

    src: int
    dst: int
    count: int


@dataclass(frozen=True)
class TransitionStructure:
    adds: tuple[AddTransition, ...]
    deletes: tuple[DeleteTransition, ...]


class Catalog:
    """All unlabeled k-node graphs plus lookup tables.

    ``class_of_mask`` maps every labeled adjacency mask (see
    ``Graph.edge_mask``) to its class index, which is what makes census
    classification a table lookup.
    """

    def __init__(self, k: int):
        if not 2 <= k <= MAX_CATALOG_K:
            raise ValueError(
                f"catalog supports 2 <= k <= {MAX_CATALOG_K}, got {k}"
            )
        self.k = k
        self.npairs = comb(k, 2)
        self._pairs = pair_order(k)
        self.class_of_mask = self._classify_all_masks()
        self.classes = self._build_classes()
        self._code_to_index = {c.code: c.index for c in self.classes}

    # -- construction ---------------------------------------------------

    def _perm_tables(self) -> np.ndarray:
        """For each permutation, where each pair-bit position moves to."""
        k, npairs = self.k, self.npairs
        pair_index = {p: i for i, p in enumerate(self._pairs)}
        tables = []
        for sigma in itertools.permutations(range(k)):
            mapping = np.empty(npairs, dtype=np.int64)
            for i, (u, v) in enumerate(self._pairs):
                a, b = sigma[u], sigma[v]
                mapping[i] = pair_index[(min(a, b), max(a, b))]
            tables.append(mapping)
        return np.array(tables)

    def _classify_all_masks(self) -> np.ndarray:
        """Canonical code of every labeled mask, then dense class indices."""
        npairs = self.npairs
        nmasks = 1 << npairs
        masks = np.arange(nmasks, dtype=np.int64)
        bits = (masks[:, None] >> (npairs - 1 - np.arange(npairs))) & 1
        weights = 1 << (npairs - 1 - np.arange(npairs, dtype=np.int64))
        canon = np.full(nmasks, nmasks, dtype=np.int64)
        for mapping in self._perm_tables():
            permuted = np.zeros(nmasks, dtype=np.int64)
            for i in range(npairs):
                permuted += bits[:, i] * weights[mapping[i]]
            np.minimum(canon, permuted, out=canon)
        self._canon_of_mask = canon
        # dense indices in (edge_count, canonical code) order
        codes = np.unique(canon)
        edge_counts = np.array([int(c).bit_count() for c in codes])
        order = np.lexsort((codes, edge_counts))
        codes = codes[order]
        index_of_code = {int(c): i for i, c in enumerate(codes)}
        self._ordered_codes = [int(c) for c in codes]
        return np.array([index_of_code[int(c)] for c in canon], dtype=np.int64)

    def _build_classes(self) -> tuple[GraphClass, ...]:
        classes = []
        for idx, code_bits in enumerate(self._ordered_codes):
            rep = graph_from_mask(self.k, code_bits)
            classes.append(
                GraphClass(
                    index=idx,
                    representative=rep,
                    edge_count=rep.edge_count,
                    aut=automorphism_count(rep),
                    code=CanonicalCode(self.k, code_bits),
                )
            )
        return tuple(classes)

    # -- lookups ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self.classes)

    def index_of(self, g: Graph) -> int:
        """Class index of any k-node graph."""
        if g.n != self.k:
            raise ValueError(f"expected a {self.k}-node graph, got n={g.n}")
        return int(self.class_of_mask[g.edge_mask()])

    def index_of_code(self, code: CanonicalCode) -> int:
        return self._code_to_index[code]

    @property
    def edge_counts(self) -> np.ndarray:
        return np.array([c.edge_count for c in self.classes])

    @property
    def labelings(self) -> np.ndarray:
        return np.array([c.labelings for c in self.classes])

    def complement_index(self, index: int) -> int:
        """Index of the complement class (reverses the edge-count order)."""
        full = (1 << self.npairs) - 1
        rep_mask = self.classes[index].code.bits
        return int(self.class_of_mask[full ^ rep_mask])


@lru_cache(maxsize=None)
def build_catalog(k: int) -> Catalog:
    """Build (and cache) the catalog of unlabeled k-node graphs."""
    return Catalog(k)


def aut_count(f: Graph) -> int:
    """Automorphism count, by permutation enumeration."""
    if f.n > MAX_CATALOG_K:
        raise ValueError(f"aut_count supports n <= {MAX_CATALOG_K}, got {f.n}")
    return automorphism_count(f)


def ext_count(f: Graph, f_prime: Graph) -> int:
    """Number of edge-supersets of the labeled graph f that are isomorphic
    to f_prime (on the same node set). Zero unless f is a subgraph of some
    copy of f_prime."""
    if f.n != f_prime.n:
        raise ValueError(
            f"ext_count needs equal node counts, got {f.n} and {f_prime.n}"
        )
    cat = build_catalog(f.n)
    target = cat.index_of(f_prime)
    base = f.edge_mask()
    free = [
        1 << (cat.npairs - 1 - i)
        for i in range(cat.npairs)
        if not (base >> (cat.npairs - 1 - i)) & 1
    ]
    count = 0
    for r in range(len(free) + 1):
        for extra in itertools.combinations(free, r):
            mask = base
            for bit in extra:
                mask |= bit
            if cat.class_of_mask[mask] == target:
                count += 1
    return count


def pairwise_frequency(f: Graph, h: Graph) -> Fraction:
    """Induced frequency of f among |V(f)|-node subsets of h, exact."""
    j, k = f.n, h.n
    if j > k:
        raise ValueError(f"pattern larger than host: {j} > {k}")
    cat_j = build_catalog(j)
    target = cat_j.index_of(f)
    hits = 0
    for subset in itertools.combinations(range(k), j):
        sub = _induced_mask(h, subset, cat_j.npairs)
        if cat_j.class_of_mask[sub] == target:
            hits += 1
    return Fraction(hits, comb(k, j))


def _induced_mask(g: Graph, nodes: tuple[int, ...], npairs: int) -> int:
    adj = g.adjacency_bits
    mask = 0
    i = 0
    m = len(nodes)
    for a in range(m):
        for b in range(a + 1, m):
            if (adj[nodes[a]] >> nodes[b]) & 1:
                mask |= 1 << (npairs - 1 - i)
            i += 1
    return mask


@lru_cache(maxsize=None)
def subgraph_counts(j: int, k: int) -> np.ndarray:
    """Integer matrix N with N[f, h] = number of j-subsets of k-node class
    h inducing class f. Dividing by C(k, j) gives exact frequencies."""
    cat_j, cat_k = build_catalog(j), build_catalog(k)
    out = np.zeros((len(cat_j), len(cat_k)), dtype=np.int64)
    for h in cat_k.classes:
        for subset in itertools.combinations(range(k), j):
            sub = _induced_mask(h.representative, subset, cat_j.npairs)
            out[cat_j.class_of_mask[sub], h.index] += 1
    return out


@lru_cache(maxsize=None)
def subgraph_matrix(j: int, k: int) -> np.ndarray:
    """Matrix S with S[f, h] = frequency of j-node class f inside k-node
    class h. Columns sum to 1."""
    return subgraph_counts(j, k) / comb(k, j)


@lru_cache(maxsize=None)
def ext_table(k: int) -> np.ndarray:
    """ext(F, F') for all ordered pairs of k-node classes."""
    cat = build_catalog(k)
    n = len(cat)
    out = np.zeros((n, n), dtype=np.int64)
    for f in cat.classes:
        base = f.code.bits
        for mask in range(1 << cat.npairs):
            if mask & base == base:
                out[f.index, cat.class_of_mask[mask]] += 1
    return out


@lru_cache(maxsize=None)
def transition_structure(k: int) -> TransitionStructure:
    """Single-edge transitions between k-node classes.

    Additions are split by the number of open 2-paths the new edge closes
    (the common-neighbor count of its endpoints), because the walk assigns
    each labeled slot a rate that grows with that count. Deletions carry
    plain multiplicities.
    """
    cat = build_catalog(k)
    adds: dict[tuple[int, int, int], int] = {}
    deletes: dict[tuple[int, int], int] = {}
    for cls in cat.classes:
        rep = cls.representative
        adj = rep.adjacency_bits
        mask = cls.code.bits
        for i, (u, v) in enumerate(pair_order(k)):
            bit = 1 << (cat.npairs - 1 - i)
            if mask & bit:
                dst = int(cat.class_of_mask[mask ^ bit])
                key = (cls.index, dst)
                deletes[key] = deletes.get(key, 0) + 1
            else:
                dst = int(cat.class_of_mask[mask | bit])
                c = (adj[u] & adj[v]).bit_count()
                akey = (cls.index, dst, c)
                adds[akey] = adds.get(akey, 0) + 1
    return TransitionStructure(
        adds=tuple(
            AddTransition(src, dst, c, m)
            for (src, dst, c), m in sorted(adds.items())
        ),
        deletes=tuple(
            DeleteTransition(src, dst, m)
            for (src, dst), m in sorted(deletes.items())
        ),
    )
