"""subgraphspace: induced subgraph frequencies of small dense graphs.

A collection of graphs becomes a cloud of points on a simplex, one
coordinate per unlabeled k-node subgraph. This package computes those
coordinates (exactly or by sampling), locates the empirical backbone of
the cloud with a triadic-closure random walk model, maps the
combinatorially feasible region with linear programs over extremal
inequalities, and classifies graph collections from frequency, residual,
and global structural features.
"""

from .graphs import (
    CanonicalCode,
    Graph,
    canonical_code,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    edge_density,
    empty_graph,
    induced_subgraph,
    path_graph,
)
from .catalog import (
    Catalog,
    GraphClass,
    aut_count,
    build_catalog,
    ext_count,
    pairwise_frequency,
    transition_structure,
)
from .census import (
    FrequencyVector,
    exact_census,
    gnp_frequency_curve,
    sampled_census,
)
from .errors import InfeasibleError, NumericalError, SizeLimitError

__version__ = "0.1.0"
