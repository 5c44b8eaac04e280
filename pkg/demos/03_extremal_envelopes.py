"""Mapping the combinatorially feasible region of subgraph frequencies.

Classical extremal inequalities (Kruskal-Katona, Moon-Moser, Sidorenko)
become linear constraints at fixed edge density, and a small LP then
bounds each frequency coordinate. The famous consequence: the 3-node
path, the "forbidden triad", can never exceed frequency 3/4 in any graph,
and balanced complete bipartite graphs get arbitrarily close.

Run:  python demos/03_extremal_envelopes.py
"""

from fractions import Fraction

import numpy as np

from subgraphspace import exact_census
from subgraphspace.extremal import (
    assemble_constraints,
    bound_envelope,
    check_point,
    solve_bounds,
)
from subgraphspace.generators import balanced_bipartite
from subgraphspace.graphs import edge_density

print("== the constraint system at p = 1/2 (k = 3) ==")
system = assemble_constraints(3, Fraction(1, 2))
for con in system.constraints:
    coeffs = ", ".join(f"{float(c):.3g}" for c in con.coeffs)
    print(f"  {con.sense:>2}  rhs {float(con.rhs):.4f}  ({coeffs})   [{con.tag}]")

print("\n== per-class bounds at p = 1/2, exact arithmetic ==")
for idx, name in ((0, "empty"), (1, "one edge"), (2, "path"), (3, "triangle")):
    lo, hi = solve_bounds(system, idx, exact=True)
    print(f"  {name:<9} in [{lo}, {hi}]")

print("\n== the path envelope over densities ==")
grid = [i / 10 for i in range(11)]
env = bound_envelope(3, 2, grid)
print("  p     lower  upper    binding at the max")
for p, lo, hi, tags in zip(env.p_grid, env.lower, env.upper, env.binding):
    shown = ", ".join(t for t in tags if "sidorenko" not in t) or "-"
    print(f"  {p:.1f}   {lo:.3f}  {hi:.5f}  {shown}")

print("\n== the bipartite witness approaches the 3/4 bound ==")
for n in (20, 40, 80):
    fv = exact_census(balanced_bipartite(n), 3)
    print(f"  K_({n//2},{n//2}): path frequency {float(fv.values[2]):.5f}")

print("\n== checking an empirical point against every constraint ==")
g = balanced_bipartite(50)
report = check_point(exact_census(g, 3), edge_density(g), tol=max(1e-6, 5 / 50))
violated = [c for c in report if c.violated]
tight = sorted(report, key=lambda c: abs(c.slack))[:3]
print(f"  violations: {len(violated)}")
for c in tight:
    print(f"  tightest: {c.tag:<35} slack {c.slack:+.4f}")
