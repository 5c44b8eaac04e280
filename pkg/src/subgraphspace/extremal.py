"""Extremal bounds on the space of induced k-node subgraph frequencies.

At a fixed edge density p, classical homomorphism inequalities
(Kruskal-Katona and Moon-Moser for cliques, Sidorenko's bound for
forests, even cycles, and complete bipartite graphs) translate into
linear constraints on the frequency vector, as do their complements.
Together with the simplex and density identities they form a linear
program whose per-coordinate optima trace the outer envelope of the
combinatorially feasible region.

All constraints are the asymptotic (large ambient graph) forms; exact
censuses of finite graphs should be checked with an additive slack of
order 1/n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

import numpy as np

from .catalog import Catalog, build_catalog, ext_table, subgraph_counts
from .census import FrequencyVector
from .graphs import Graph, complete_graph
from .lp import solve_lp

__all__ = [
    "Constraint",
    "ConstraintSystem",
    "BoundEnvelope",
    "ConstraintCheck",
    "hom_to_frequency_coeffs",
    "assemble_constraints",
    "solve_bounds",
    "bound_envelope",
    "check_point",
]


@dataclass(frozen=True)
class Constraint:
    """Linear constraint coeffs . x (sense) rhs over frequency vectors,
    tagged with the inequality it came from."""

    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    sense: str  # "eq", "le", or "ge"
    tag: str

    def evaluate(self, x: np.ndarray) -> float:
        return float(np.dot([float(c) for c in self.coeffs], x))

    def slack(self, x: np.ndarray) -> float:
        """Nonnegative when satisfied; for equalities, minus the absolute
        residual."""
        lhs = self.evaluate(x)
        r = float(self.rhs)
        if self.sense == "le":
            return r - lhs
        if self.sense == "ge":
            return lhs - r
        return -abs(lhs - r)


@dataclass(frozen=True)
class ConstraintSystem:
    k: int
    p: Fraction
    equalities: tuple[Constraint, ...]
    inequalities: tuple[Constraint, ...]

    @property
    def constraints(self) -> tuple[Constraint, ...]:
        return self.equalities + self.inequalities

    def dimension(self) -> int:
        return len(build_catalog(self.k))


@dataclass(frozen=True)
class ConstraintCheck:
    tag: str
    sense: str
    value: float
    rhs: float
    slack: float
    violated: bool


@dataclass(frozen=True)
class BoundEnvelope:
    k: int
    class_index: int
    p_grid: tuple[float, ...]
    lower: tuple[float, ...]
    upper: tuple[float, ...]
    binding: tuple[tuple[str, ...], ...] = field(default=(), compare=False)


def _exact_frequency_matrix(j: int, k: int) -> list[list[Fraction]]:
    counts = subgraph_counts(j, k)
    denom = comb(k, j)
    return [[Fraction(int(c), denom) for c in row] for row in counts]


def hom_to_frequency_coeffs(f: Graph, catalog: Catalog) -> list[Fraction]:
    """Coefficients c with c . x = t_inj(f, G) when x is the k-node
    frequency vector of a large graph G.

    Over f's own node count, the injective homomorphism density is the
    extension-weighted sum of superset-class frequencies (ext times aut
    over j factorial); the law of total probability then lifts the
    functional from j-node to k-node frequencies.
    """
    j, k = f.n, catalog.k
    if j > k:
        raise ValueError(f"pattern on {j} nodes exceeds catalog k={k}")
    cat_j = build_catalog(j)
    ext = ext_table(j)
    fi = cat_j.index_of(f)
    coeffs_j = [
        Fraction(int(ext[fi, h.index]) * h.aut, factorial(j))
        for h in cat_j.classes
    ]
    if j == k:
        return coeffs_j
    lift = _exact_frequency_matrix(j, k)
    dim = len(build_catalog(k))
    return [
        sum((coeffs_j[a] * lift[a][b] for a in range(len(cat_j))), Fraction(0))
        for b in range(dim)
    ]


def _complemented(
    cat: Catalog, coeffs: Sequence[Fraction], rhs: Fraction, sense: str, tag: str
) -> Constraint:
    """The same inequality applied to complement classes at density 1-p."""
    out = [Fraction(0)] * len(cat)
    for i, v in enumerate(coeffs):
        out[cat.complement_index(i)] = v
    return Constraint(tuple(out), rhs, sense, tag + ":complement")


def _half_power(p: Fraction, r: int) -> Fraction:
    """p^(r/2): exact when r is even, otherwise the rational value of the
    float approximation (relative error ~1e-16)."""
    if r % 2 == 0:
        return p ** (r // 2)
    return Fraction(float(p) ** (r / 2.0))


def _moon_moser_rhs(p: Fraction, r: int) -> Fraction:
    out = Fraction(1)
    for i in range(1, r):
        out *= 1 - i * (1 - p)
    return out


def _components(g: Graph) -> Iterable[list[int]]:
    seen = [False] * g.n
    for start in range(g.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        members = []
        while stack:
            v = stack.pop()
            members.append(v)
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        yield members


def _is_forest(g: Graph) -> bool:
    return g.edge_count == g.n - sum(1 for _ in _components(g))


def _is_even_cycle(g: Graph) -> bool:
    return (
        g.n % 2 == 0
        and g.n >= 4
        and all(d == 2 for d in g.degrees)
        and sum(1 for _ in _components(g)) == 1
    )


def _is_complete_bipartite(g: Graph) -> bool:
    if sum(1 for _ in _components(g)) != 1:
        return False
    color = [-1] * g.n
    color[0] = 0
    queue = [0]
    while queue:
        v = queue.pop()
        for w in g.neighbors(v):
            if color[w] < 0:
                color[w] = 1 - color[v]
                queue.append(w)
            elif color[w] == color[v]:
                return False
    a = sum(1 for c in color if c == 0)
    return g.edge_count == a * (g.n - a)


def _sidorenko_patterns(k: int) -> list[tuple[str, Graph]]:
    """Catalog classes on 3..k nodes covered by Sidorenko's inequality:
    forests, even cycles, complete bipartite graphs. Edgeless classes are
    skipped (their bound is trivial)."""
    out = []
    for j in range(3, k + 1):
        for cls in build_catalog(j).classes:
            g = cls.representative
            if g.edge_count == 0:
                continue
            if _is_forest(g) or _is_even_cycle(g) or _is_complete_bipartite(g):
                out.append((f"{j}n:{cls.code.bitstring}", g))
    return out


def assemble_constraints(
    k: int, p: float | Fraction, catalog: Catalog | None = None
) -> ConstraintSystem:
    """The full linear constraint system at edge density p.

    Emits the simplex and density equalities; Kruskal-Katona upper bounds
    and (on their valid density ranges) Moon-Moser lower bounds for
    cliques K_3..K_k; Sidorenko lower bounds for every forest, even
    cycle, and complete bipartite class on 3..k nodes; and the complement
    of every inequality with p replaced by 1-p. Nonnegativity is implicit
    in the LP solver's variable domain.
    """
    if not 3 <= k <= 5:
        raise ValueError(f"constraint systems support 3 <= k <= 5, got {k}")
    cat = catalog or build_catalog(k)
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    q = 1 - p

    equalities = (
        Constraint(
            tuple([Fraction(1)] * len(cat)), Fraction(1), "eq", "simplex"
        ),
        Constraint(
            tuple(Fraction(c.edge_count, cat.npairs) for c in cat.classes),
            p,
            "eq",
            "density",
        ),
    )

    inequalities: list[Constraint] = []
    for r in range(3, k + 1):
        coeffs = tuple(hom_to_frequency_coeffs(complete_graph(r), cat))
        tag = f"kruskal_katona:K{r}"
        inequalities.append(Constraint(coeffs, _half_power(p, r), "le", tag))
        inequalities.append(
            _complemented(cat, coeffs, _half_power(q, r), "le", tag)
        )
        threshold = Fraction(r - 2, r - 1)
        mm_tag = f"moon_moser:K{r}"
        if p >= threshold:
            inequalities.append(
                Constraint(coeffs, _moon_moser_rhs(p, r), "ge", mm_tag)
            )
        if q >= threshold:
            inequalities.append(
                _complemented(cat, coeffs, _moon_moser_rhs(q, r), "ge", mm_tag)
            )

    for name, g in _sidorenko_patterns(k):
        coeffs = tuple(hom_to_frequency_coeffs(g, cat))
        e = g.edge_count
        tag = f"sidorenko:{name}"
        inequalities.append(Constraint(coeffs, p**e, "ge", tag))
        inequalities.append(_complemented(cat, coeffs, q**e, "ge", tag))

    # drop exact duplicates (complements of self-complementary rows)
    seen: set = set()
    unique = []
    for con in inequalities:
        key = (con.sense, con.coeffs, con.rhs)
        if key not in seen:
            seen.add(key)
            unique.append(con)
    return ConstraintSystem(
        k=k, p=p, equalities=equalities, inequalities=tuple(unique)
    )


def _lp_rows(system: ConstraintSystem):
    a_eq = [list(c.coeffs) for c in system.equalities]
    b_eq = [c.rhs for c in system.equalities]
    a_ub, b_ub = [], []
    names = [c.tag for c in system.equalities]
    for c in system.inequalities:
        if c.sense == "le":
            a_ub.append(list(c.coeffs))
            b_ub.append(c.rhs)
        else:
            a_ub.append([-v for v in c.coeffs])
            b_ub.append(-c.rhs)
        names.append(c.tag)
    return a_eq, b_eq, a_ub, b_ub, names


def _optimize(system: ConstraintSystem, class_index: int, maximize: bool, exact: bool):
    a_eq, b_eq, a_ub, b_ub, names = _lp_rows(system)
    objective = [0] * system.dimension()
    objective[class_index] = 1
    return solve_lp(
        objective, a_eq, b_eq, a_ub, b_ub,
        maximize=maximize, exact=exact, row_names=names,
    )


def solve_bounds(
    system: ConstraintSystem, class_index: int, exact: bool = True
) -> tuple:
    """Minimum and maximum of one frequency coordinate over the feasible
    region; Fractions in exact mode, floats otherwise."""
    if not 0 <= class_index < system.dimension():
        raise ValueError(
            f"class index {class_index} out of range for k={system.k}"
        )
    lo = _optimize(system, class_index, False, exact)
    hi = _optimize(system, class_index, True, exact)
    return lo.value, hi.value


def _binding_tags(
    system: ConstraintSystem, x: np.ndarray, eps: float = 1e-7
) -> tuple[str, ...]:
    return tuple(
        con.tag
        for con in system.inequalities
        if abs(con.slack(x)) <= eps
    )


def bound_envelope(
    k: int,
    class_index: int,
    p_grid: Sequence[float],
    exact: bool = False,
) -> BoundEnvelope:
    """Per-density lower/upper LP bounds for one class, with the tags of
    the inequalities active at the maximizing point."""
    lows, highs, binding = [], [], []
    for p in p_grid:
        if not 0.0 <= float(p) <= 1.0:
            raise ValueError(f"grid value {p} outside [0, 1]")
        system = assemble_constraints(k, p)
        lo = _optimize(system, class_index, False, exact)
        hi = _optimize(system, class_index, True, exact)
        x = np.array([float(v) for v in hi.x])
        lows.append(float(lo.value) + 0.0)  # normalize -0.0
        highs.append(float(hi.value) + 0.0)
        binding.append(_binding_tags(system, x))
    return BoundEnvelope(
        k=k,
        class_index=class_index,
        p_grid=tuple(float(p) for p in p_grid),
        lower=tuple(lows),
        upper=tuple(highs),
        binding=tuple(binding),
    )


def check_point(
    y: FrequencyVector, p: float, tol: float = 1e-6
) -> list[ConstraintCheck]:
    """Evaluate every constraint at a frequency vector; entries with
    ``violated`` set breach their constraint by more than tol."""
    system = assemble_constraints(y.k, p)
    x = np.asarray(y.values, dtype=float)
    report = []
    for con in system.constraints:
        s = con.slack(x)
        report.append(
            ConstraintCheck(
                tag=con.tag,
                sense=con.sense,
                value=con.evaluate(x),
                rhs=float(con.rhs),
                slack=s,
                violated=s < -tol,
            )
        )
    return report
