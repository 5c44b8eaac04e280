"""Induced k-node subgraph frequency vectors: exact by subset enumeration,
sampled for graphs too large to enumerate, and the closed-form curve for
Erdos-Renyi random graphs.

Exact censuses are integer subset counts normalized at the boundary, so
frequencies sum to exactly one in rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterator, Optional

import numpy as np

from .catalog import Catalog, build_catalog
from .errors import SizeLimitError
from .graphs import Graph, pair_order

__all__ = [
    "FrequencyVector",
    "exact_census",
    "sampled_census",
    "gnp_frequency_curve",
    "DEFAULT_SAMPLES",
    "ENUMERATION_GUARD",
]

DEFAULT_SAMPLES = 11_000
ENUMERATION_GUARD = 10**8
_CHUNK_ROWS = 1 << 21


@dataclass(frozen=True)
class FrequencyVector:
    """Point on the simplex of induced k-node subgraph frequencies, indexed
    in catalog order. ``counts`` holds the raw subset tallies when exact."""

    k: int
    values: np.ndarray
    mode: str = "exact"
    sample_count: int = 0
    counts: Optional[np.ndarray] = field(default=None, compare=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if np.any(vals < -1e-12):
            raise ValueError("frequencies must be nonnegative")
        if abs(float(vals.sum()) - 1.0) > 1e-9:
            raise ValueError(f"frequencies sum to {vals.sum()}, expected 1")

    def __len__(self) -> int:
        return len(self.values)

    def density(self) -> float:
        """Implied edge density: mean of per-class edge fractions."""
        cat = build_catalog(self.k)
        return float(self.values @ (cat.edge_counts / cat.npairs))


@lru_cache(maxsize=8)
def _subset_table(n: int, k: int) -> np.ndarray:
    """All k-subsets of range(n), one row each, grouped by largest element.

    The grouping makes the table self-similar: the first C(l, k) rows are
    exactly the k-subsets of range(l), which lets larger tables be built
    from smaller ones with pure array copies.
    """
    table = np.arange(n, dtype=np.int32).reshape(-1, 1)
    for j in range(2, k + 1):
        out = np.empty((comb(n, j), j), dtype=np.int32)
        offset = 0
        for last in range(j - 1, n):
            rows = comb(last, j - 1)
            out[offset : offset + rows, : j - 1] = table[:rows]
            out[offset : offset + rows, j - 1] = last
            offset += rows
        table = out
    return table


def _subset_chunks(n: int, k: int) -> Iterator[np.ndarray]:
    total = comb(n, k)
    if total <= _CHUNK_ROWS:
        yield _subset_table(n, k)
        return
    prefix = _subset_table(n, k - 1)
    chunk: list[np.ndarray] = []
    size = 0
    for last in range(k - 1, n):
        rows = comb(last, k - 1)
        block = np.empty((rows, k), dtype=np.int32)
        block[:, : k - 1] = prefix[:rows]
        block[:, k - 1] = last
        chunk.append(block)
        size += rows
        if size >= _CHUNK_ROWS:
            yield np.vstack(chunk)
            chunk, size = [], 0
    if chunk:
        yield np.vstack(chunk)


def _classify_subsets(
    adjacency: np.ndarray, subsets: np.ndarray, catalog: Catalog
) -> np.ndarray:
    """Class index of the subgraph induced by each row of ``subsets``."""
    npairs = catalog.npairs
    codes = np.zeros(len(subsets), dtype=np.int64)
    for i, (a, b) in enumerate(pair_order(catalog.k)):
        bit = adjacency[subsets[:, a], subsets[:, b]].astype(np.int64)
        codes += bit << (npairs - 1 - i)
    return catalog.class_of_mask[codes]


def exact_census(
    g: Graph, k: int, guard: int = ENUMERATION_GUARD
) -> FrequencyVector:
    """Exact induced k-subgraph frequencies by enumerating every k-subset."""
    if g.n < k:
        raise ValueError(f"graph has n={g.n} < k={k} nodes")
    total = comb(g.n, k)
    if total > guard:
        raise SizeLimitError(
            f"C({g.n},{k}) = {total} subsets exceeds the enumeration guard "
            f"({guard}); use sampled_census instead"
        )
    catalog = build_catalog(k)
    adjacency = g.adjacency_matrix()
    counts = np.zeros(len(catalog), dtype=np.int64)
    for subsets in _subset_chunks(g.n, k):
        idx = _classify_subsets(adjacency, subsets, catalog)
        counts += np.bincount(idx, minlength=len(catalog))
    assert int(counts.sum()) == total
    return FrequencyVector(
        k=k, values=counts / total, mode="exact", sample_count=0, counts=counts
    )


def sampled_census(
    g: Graph,
    k: int,
    samples: int = DEFAULT_SAMPLES,
    seed: int | np.random.SeedSequence | None = None,
) -> FrequencyVector:
    """Census estimate from uniform k-subsets drawn with replacement.

    Each entry's standard error is at most sqrt(0.25/samples). Reproducible
    for a fixed seed.
    """
    if g.n < k:
        raise ValueError(f"graph has n={g.n} < k={k} nodes")
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    catalog = build_catalog(k)
    adjacency = g.adjacency_matrix()
    rng = np.random.default_rng(seed)
    counts = np.zeros(len(catalog), dtype=np.int64)
    remaining = samples
    batch = max(1, min(samples, (1 << 23) // max(g.n, 1)))
    while remaining > 0:
        m = min(batch, remaining)
        # k smallest entries of random rows = uniform k-subsets
        keys = rng.random((m, g.n))
        subsets = np.argpartition(keys, k - 1, axis=1)[:, :k]
        idx = _classify_subsets(adjacency, subsets, catalog)
        counts += np.bincount(idx, minlength=len(catalog))
        remaining -= m
    return FrequencyVector(
        k=k,
        values=counts / samples,
        mode="sampled",
        sample_count=samples,
        counts=counts,
    )


def gnp_frequency_curve(k: int, p: float) -> FrequencyVector:
    """Class probabilities of a k-node Erdos-Renyi graph G_{k,p}.

    Each class H gets (labelings of H) * p^{|E(H)|} (1-p)^{C(k,2)-|E(H)|};
    for k=3 this is the familiar ((1-p)^3, 3p(1-p)^2, 3p^2(1-p), p^3).
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    catalog = build_catalog(k)
    e = catalog.edge_counts
    vals = (
        catalog.labelings.astype(float)
        * np.power(float(p), e)
        * np.power(1.0 - float(p), catalog.npairs - e)
    )
    return FrequencyVector(k=k, values=vals, mode="exact", sample_count=0)
