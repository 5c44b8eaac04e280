"""Small dense linear programs by the two-phase simplex method.

One implementation covers two arithmetics: exact rationals (every entry a
Fraction, zero tolerance) and floats (small tolerances). The systems this
package builds have at most a few dozen rows and columns, so clarity and
exactness win over sparse cleverness. Bland's rule prevents cycling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InfeasibleError

__all__ = ["LPResult", "solve_lp"]


@dataclass(frozen=True)
class LPResult:
    x: tuple
    value: object  # Fraction in exact mode, float otherwise
    iterations: int


def _pivot(tableau: list[list], basis: list[int], row: int, col: int) -> None:
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    prow = tableau[row]
    for r, other in enumerate(tableau):
        if r != row and other[col]:
            f = other[col]
            tableau[r] = [a - f * b for a, b in zip(other, prow)]
    basis[row] = col


def _run_simplex(
    tableau: list[list],
    basis: list[int],
    nrows: int,
    allowed: int,
    tol,
) -> int:
    """Minimize the objective carried in the last tableau row; Bland's rule.

    Only columns with index < ``allowed`` may enter the basis (used to keep
    artificials out in phase 2).
    """
    iterations = 0
    while True:
        obj = tableau[-1]
        col = -1
        for j in range(allowed):
            if obj[j] < -tol:
                col = j
                break
        if col < 0:
            return iterations
        best_row = -1
        best_ratio = None
        for i in range(nrows):
            a = tableau[i][col]
            if a > tol:
                ratio = tableau[i][-1] / a
                if (
                    best_row < 0
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[best_row])
                ):
                    best_row, best_ratio = i, ratio
        if best_row < 0:
            raise RuntimeError("linear program is unbounded")
        _pivot(tableau, basis, best_row, col)
        iterations += 1
        if iterations > 100_000:
            raise RuntimeError("simplex iteration limit exceeded")


def solve_lp(
    objective: Sequence,
    a_eq: Sequence[Sequence],
    b_eq: Sequence,
    a_ub: Sequence[Sequence],
    b_ub: Sequence,
    maximize: bool = False,
    exact: bool = True,
    row_names: Sequence[str] | None = None,
) -> LPResult:
    """Optimize objective . x subject to a_eq x = b_eq, a_ub x <= b_ub,
    x >= 0.

    With ``exact`` every input is converted to Fraction and the optimum is
    exact; otherwise floats are used throughout. Raises InfeasibleError
    (naming the rows whose artificial variables stay positive) when the
    constraints admit no point.
    """
    if exact:
        conv = Fraction
        zero, one = Fraction(0), Fraction(1)
        tol = Fraction(0)
        feas_tol = Fraction(0)
    else:
        conv = float
        zero, one = 0.0, 1.0
        tol = 1e-11
        feas_tol = 1e-9

    nvars = len(objective)
    c = [conv(v) for v in objective]
    if maximize:
        c = [-v for v in c]

    rows = [[conv(v) for v in row] for row in a_eq]
    rhs = [conv(v) for v in b_eq]
    senses = ["eq"] * len(rows)
    for row, b in zip(a_ub, b_ub):
        rows.append([conv(v) for v in row])
        rhs.append(conv(b))
        senses.append("ub")
    nrows = len(rows)
    names = list(row_names) if row_names else [f"row{i}" for i in range(nrows)]

    nslack = sum(1 for s in senses if s == "ub")
    # columns: structural | slack | artificial | rhs
    slack_of_row: dict[int, int] = {}
    j = nvars
    for i, s in enumerate(senses):
        if s == "ub":
            slack_of_row[i] = j
            j += 1
    first_artificial = nvars + nslack

    tableau: list[list] = []
    basis: list[int] = []
    artificial_rows: list[int] = []
    n_art = 0
    for i in range(nrows):
        row = list(rows[i])
        b = rhs[i]
        flip = b < zero
        if flip:
            row = [-v for v in row]
            b = -b
        full = row + [zero] * nslack
        if i in slack_of_row:
            full[slack_of_row[i]] = -one if flip else one
        if i in slack_of_row and not flip:
            basis.append(slack_of_row[i])
        else:
            basis.append(first_artificial + n_art)
            artificial_rows.append(i)
            n_art += 1
        tableau.append(full + [b])

    ncols = first_artificial + n_art + 1
    for i in range(nrows):
        row = tableau[i]
        art = [zero] * n_art
        if basis[i] >= first_artificial:
            art[basis[i] - first_artificial] = one
        tableau[i] = row[:-1] + art + [row[-1]]

    # phase 1: minimize the sum of artificials
    phase1 = [zero] * ncols
    for i in artificial_rows:
        phase1 = [a - b for a, b in zip(phase1, tableau[i])]
    for idx in range(n_art):
        phase1[first_artificial + idx] = zero
    tableau.append(phase1)
    iters = _run_simplex(tableau, basis, nrows, first_artificial, tol)
    infeas = -tableau[-1][-1]
    if infeas > feas_tol:
        bad = [names[i] for i in artificial_rows if tableau[i][-1] > feas_tol]
        raise InfeasibleError(
            f"no feasible point (phase-1 residual {infeas})", bad
        )
    tableau.pop()

    # drive any leftover basic artificials out of the basis; rows whose
    # non-artificial entries are all zero are redundant and inert
    for i in range(nrows):
        if basis[i] >= first_artificial:
            for j in range(first_artificial):
                if abs(tableau[i][j]) > tol:
                    _pivot(tableau, basis, i, j)
                    break

    # phase 2: original objective, artificials barred from entering
    obj_row = [zero] * ncols
    obj_row[:nvars] = list(c)
    for i in range(nrows):
        bi = basis[i]
        if bi < nvars and obj_row[bi]:
            f = obj_row[bi]
            obj_row = [a - f * b for a, b in zip(obj_row, tableau[i])]
    tableau.append(obj_row)
    iters += _run_simplex(tableau, basis, nrows, first_artificial, tol)

    x = [zero] * nvars
    for i in range(nrows):
        if basis[i] < nvars:
            x[basis[i]] = tableau[i][-1]
    value = sum(ci * xi for ci, xi in zip(c, x))
    if maximize:
        value = -value
    return LPResult(x=tuple(x), value=value, iterations=iters)
