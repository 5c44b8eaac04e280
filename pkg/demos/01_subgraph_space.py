"""A tour of the subgraph-frequency coordinate system.

Every graph maps to a point on a simplex: one coordinate per unlabeled
k-node graph, valued at the frequency with which random k-node subsets
induce that graph. This script builds the 3- and 4-node catalogs, places
a few named graphs in the space, and shows how Erdos-Renyi graphs trace a
one-dimensional curve through it.

Run:  python demos/01_subgraph_space.py
"""

import numpy as np

from subgraphspace import (
    build_catalog,
    complete_bipartite,
    cycle_graph,
    edge_density,
    exact_census,
    gnp_frequency_curve,
)
from subgraphspace.generators import near_clique_sequence, sample_gnp

print("== the 3-node catalog ==")
cat = build_catalog(3)
for cls in cat.classes:
    print(
        f"  index {cls.index}: {cls.edge_count} edges, "
        f"{cls.aut} automorphisms, code {cls.code.bitstring}"
    )
print(f"4-node classes: {len(build_catalog(4))} (an 11-simplex)")

print("\n== a few graphs as points in the space (k=3) ==")
examples = {
    "5-cycle": cycle_graph(5),
    "K_{10,10}": complete_bipartite(10, 10),
    "near-clique (p=0.5, n=40)": near_clique_sequence(0.5, [40])[0],
    "G(40, 0.5) sample": sample_gnp(40, 0.5, seed=7),
}
print(f"  {'graph':<28} {'density':>8}   frequency vector")
for name, g in examples.items():
    fv = exact_census(g, 3)
    vec = ", ".join(f"{v:.3f}" for v in fv.values)
    print(f"  {name:<28} {edge_density(g):>8.3f}   ({vec})")

print("\n== the Erdos-Renyi curve (k=3) ==")
print("  p      empty   1-edge  path    triangle")
for p in np.linspace(0.1, 0.9, 9):
    row = gnp_frequency_curve(3, p).values
    print(f"  {p:.1f}   " + "  ".join(f"{v:.4f}" for v in row))

print(
    "\nA G(n,p) sample's census hugs the curve at its own density, while"
    "\nstructured graphs (bipartite, near-cliques) sit far from it:"
)
g = sample_gnp(60, 0.4, seed=1)
fv = exact_census(g, 3)
curve = gnp_frequency_curve(3, edge_density(g))
print(f"  G(60,0.4) census:  {np.round(fv.values, 4)}")
print(f"  curve at same p:   {np.round(curve.values, 4)}")
kb = exact_census(complete_bipartite(30, 30), 3)
print(f"  K_(30,30) census:  {np.round(kb.values, 4)}  <- path-heavy, no triangles")
