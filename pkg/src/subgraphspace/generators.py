"""Synthetic graph sources: Erdos-Renyi sampling, a Gillespie simulator
for the triadic-closure walk on labeled n-node graphs, and the extremal
witness families (near-cliques and balanced complete bipartite graphs).
"""

from __future__ import annotations

from math import comb
from typing import Sequence

import numpy as np

from .catalog import build_catalog
from .census import exact_census
from .graphs import Graph, complete_bipartite, complete_graph
from .walk import RateModel

__all__ = [
    "sample_gnp",
    "simulate_walk",
    "near_clique_sequence",
    "f_free_sequence",
    "balanced_bipartite",
    "is_near_clique",
]


def sample_gnp(
    n: int, p: float, seed: int | np.random.SeedSequence | None = None
) -> Graph:
    """Erdos-Renyi G_{n,p}: each pair independently an edge w.p. p."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    iu, iv = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    edges = list(zip(iu[keep].tolist(), iv[keep].tolist()))
    return Graph.from_edges(n, edges)


def simulate_walk(
    n: int,
    model: RateModel,
    burn_in: float | None = None,
    seed: int | np.random.SeedSequence | None = None,
    max_events: int | None = None,
) -> Graph:
    """Gillespie simulation of the triadic-closure walk on labeled n-node
    graphs, started empty and returned at time ``burn_in``.

    Each absent pair (u, v) forms at rate nu + lam * |common neighbors|;
    each present edge is deleted at rate 1. The default burn-in is
    10/(1+nu), ten relaxation times of a single edge slot at lam = 0.
    Updates after each event touch only the pairs whose common-neighbor
    count the flipped edge changed.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    nu, lam = model.nu, model.lam
    if burn_in is None:
        burn_in = 10.0 / (1.0 + nu)
    if burn_in <= 0:
        raise ValueError(f"burn_in must be positive, got {burn_in}")
    rng = np.random.default_rng(seed)

    iu, iv = np.triu_indices(n, k=1)
    npairs = len(iu)
    pair_id = np.zeros((n, n), dtype=np.int64)
    pair_id[iu, iv] = np.arange(npairs)
    pair_id[iv, iu] = np.arange(npairs)

    adj = [0] * n
    present = np.zeros(npairs, dtype=bool)
    rates = np.full(npairs, nu, dtype=float)

    def bump_open_pairs(u: int, v: int, delta: float) -> None:
        # the flipped edge (u, v) changes c(u, w) for w ~ v and c(v, w)
        # for w ~ u; only absent pairs carry formation rates
        for a, b in ((u, v), (v, u)):
            mask = adj[b] & ~(1 << a)
            w = 0
            while mask:
                low = mask & -mask
                w = low.bit_length() - 1
                pid = pair_id[a, w]
                if not present[pid]:
                    rates[pid] += delta
                mask ^= low
    t = 0.0
    events = 0
    while True:
        total = float(rates.sum())
        t += rng.exponential(1.0 / total)
        if t >= burn_in:
            break
        r = rng.random() * total
        idx = int(np.searchsorted(np.cumsum(rates), r))
        idx = min(idx, npairs - 1)
        u, v = int(iu[idx]), int(iv[idx])
        if present[idx]:
            present[idx] = False
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
            rates[idx] = nu + lam * (adj[u] & adj[v]).bit_count()
            if lam:
                bump_open_pairs(u, v, -lam)
        else:
            present[idx] = True
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            rates[idx] = 1.0
            if lam:
                bump_open_pairs(u, v, lam)
        events += 1
        if max_events is not None and events >= max_events:
            break
    edges = list(zip(iu[present].tolist(), iv[present].tolist()))
    return Graph.from_edges(n, edges)


def _clique_size_for_density(p: float, n: int) -> int:
    """Clique size whose edge count best matches density p among n nodes;
    ties round toward the smaller clique."""
    target = p * comb(n, 2)
    best, best_err = 0, float("inf")
    for c in range(n + 1):
        err = abs(comb(c, 2) - target)
        if err < best_err:
            best, best_err = c, err
    return best


def near_clique_sequence(p: float, sizes: Sequence[int]) -> list[Graph]:
    """Cliques plus isolated nodes whose densities approach p.

    Induced subgraphs of a near-clique are near-cliques, so these graphs
    contain no induced copy of anything outside that family.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    out = []
    for n in sizes:
        if n < 2:
            raise ValueError(f"sizes must be >= 2, got {n}")
        c = _clique_size_for_density(p, n)
        clique = complete_graph(c)
        out.append(Graph(n, clique.edges))
    return out


def is_near_clique(g: Graph) -> bool:
    """At most one component of size > 1, and that component a clique."""
    seen = [False] * g.n
    big = 0
    for start in range(g.n):
        if seen[start]:
            continue
        stack, members = [start], []
        seen[start] = True
        while stack:
            v = stack.pop()
            members.append(v)
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        if len(members) > 1:
            big += 1
            if big > 1:
                return False
            c = len(members)
            edges_inside = sum(g.degrees[v] for v in members) // 2
            if edges_inside != comb(c, 2):
                return False
    return True


def f_free_sequence(
    f: Graph, p: float, sizes: Sequence[int]
) -> list[Graph]:
    """Graphs of asymptotic density p with no induced copy of f.

    Near-cliques work unless f itself is a near-clique, in which case the
    complements of near-cliques at density 1-p do. Every output is
    verified by an exact census of f's class.
    """
    npairs = comb(f.n, 2)
    if f.edge_count == 0 or f.edge_count == npairs:
        raise ValueError(
            "f must be neither complete nor empty; those classes cannot "
            "be avoided at every density"
        )
    if is_near_clique(f):
        from .graphs import complement

        members = [
            complement(g) for g in near_clique_sequence(1.0 - p, sizes)
        ]
    else:
        members = near_clique_sequence(p, sizes)
    cat = build_catalog(f.n)
    target = cat.index_of(f)
    for g in members:
        census = exact_census(g, f.n)
        if census.counts[target] != 0:
            raise AssertionError(
                f"construction failed: census of class {target} nonzero"
            )
    return members


def balanced_bipartite(n: int) -> Graph:
    """Complete bipartite graph with two equal sides."""
    if n < 2 or n % 2:
        raise ValueError(f"need an even n >= 2, got {n}")
    return complete_bipartite(n // 2, n // 2)
