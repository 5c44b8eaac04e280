"""Fitting the triadic-closure backbone of a graph collection.

The stationary distribution of an edge-formation random walk with a
per-open-path closure rate traces a one-parameter family of curves
through the subgraph simplex. Fitting that rate to a collection's
censuses locates the collection's backbone; residuals against it are a
useful, density-free description of each graph.

Run:  python demos/02_triadic_backbone.py
"""

import numpy as np

from subgraphspace import build_catalog, edge_density, exact_census
from subgraphspace.generators import simulate_walk
from subgraphspace.walk import (
    RateModel,
    backbone_curve,
    backbone_residual,
    fit_lambda,
    lambda_objective,
    nu_for_density,
)

print("== closure shifts stationary mass toward triangles ==")
print("  lam    nu(p=0.5)   triangle mass   path mass")
for lam in (0.0, 0.5, 1.61, 4.0):
    nu = nu_for_density(3, 0.5, lam)
    pi = backbone_curve(3, [0.5], lam)[0]
    print(f"  {lam:<5} {nu:>9.4f}   {pi[3]:>13.4f}   {pi[2]:>9.4f}")

print("\n== fitting the closure rate of a simulated collection ==")
# sparse walk collections: moderate densities are unstable under strong
# closure (the walk nucleates to a near-complete graph), so the simulator
# runs in its metastable sparse phase
model = RateModel(3, nu=0.002, lam=1.0)
censuses, densities = [], []
for seed in range(300):
    g = simulate_walk(50, model, burn_in=25.0, seed=seed)
    if 0 < g.edge_count < 1225:
        censuses.append(exact_census(g, 3))
        densities.append(edge_density(g))
lam_hat = fit_lambda(censuses, densities, 3)
print(f"  simulated at closure rate 1.0 (n=50, sparse phase)")
print(f"  fitted backbone rate: {lam_hat:.3f}")
print(f"  objective at fit:     {lambda_objective(lam_hat, censuses, densities, 3):.4f}")
print(f"  objective at zero:    {lambda_objective(0.0, censuses, densities, 3):.4f}")
print(
    "  (ambient-graph closure compounds through shared edges, so the"
    "\n   fitted rate reads above the simulator's; the zero/nonzero"
    "\n   contrast is the robust signal)"
)

print("\n== residuals orient graphs against the backbone ==")
cat = build_catalog(3)
g = simulate_walk(50, RateModel(3, 0.002, 2.0), burn_in=25.0, seed=17)
fv = exact_census(g, 3)
p = edge_density(g)
r_g = backbone_residual(fv, p, 0.0)
r_lam = backbone_residual(fv, p, lam_hat)
print(f"  a walk graph at density {p:.4f}")
print(f"  residual vs Erdos-Renyi curve: {np.round(r_g, 5)}")
print(f"  residual vs fitted backbone:   {np.round(r_lam, 5)}")
print("  (triangle surplus shrinks once the backbone carries closure)")
