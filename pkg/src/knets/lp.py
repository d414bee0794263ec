"""Exact rational linear programming, small and dense.

Two-phase primal simplex with Bland's rule over ``fractions.Fraction``.
Bland's rule guarantees termination; exact arithmetic means the reported
optimum is a certificate, not an estimate.  Problem sizes here are tiny
(tens of variables), so a dense tableau is the right tool.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

try:  # much faster exact rationals for the pivot loops, same semantics
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

ZERO = _Q(0)
ONE = _Q(1)


class Infeasible(Exception):
    pass


class Unbounded(Exception):
    pass


def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    inv = ONE / piv
    tableau[row] = [x * inv for x in tableau[row]]
    prow = tableau[row]
    for r, line in enumerate(tableau):
        if r != row and line[col] != 0:
            f = line[col]
            tableau[r] = [a - f * b for a, b in zip(line, prow)]
    basis[row] = col


def _run_simplex(tableau, basis, ncols):
    # Objective row is tableau[-1]; minimize. Bland: entering = lowest index
    # with negative reduced cost, leaving = lowest basis index among min ratios.
    while True:
        obj = tableau[-1]
        col = next((j for j in range(ncols) if obj[j] < 0), None)
        if col is None:
            return
        best = None
        for r in range(len(tableau) - 1):
            a = tableau[r][col]
            if a > 0:
                ratio = tableau[r][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:
            raise Unbounded()
        _pivot(tableau, basis, best[1], col)


def solve_lp(costs: Sequence[Fraction], eq_lhs: Sequence[Sequence[Fraction]],
             eq_rhs: Sequence[Fraction]):
    """min costs.x  subject to  eq_lhs x = eq_rhs, x >= 0.

    Returns (optimal value, solution vector).  Raises Infeasible or
    Unbounded.  All data must be Fractions (or ints).
    """
    m = len(eq_lhs)
    n = len(costs)
    costs = [_Q(c) for c in costs]
    rows = []
    rhs = []
    for lhs, b in zip(eq_lhs, eq_rhs):
        lhs = [_Q(a) for a in lhs]
        b = _Q(b)
        if b < 0:
            lhs = [-a for a in lhs]
            b = -b
        rows.append(lhs)
        rhs.append(b)

    # Phase 1: artificial variables n..n+m-1 form the starting basis.
    width = n + m
    tableau = []
    for i in range(m):
        line = rows[i] + [ONE if j == i else ZERO for j in range(m)] + [rhs[i]]
        tableau.append(line)
    phase1 = [ZERO] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            phase1[j] -= tableau[i][j]
    # Artificial columns have cost 1; after subtracting basis rows their
    # reduced costs are 0, matching the canonical phase-1 objective.
    for j in range(n, width):
        phase1[j] += ONE
    tableau.append(phase1)
    basis = list(range(n, width))
    _run_simplex(tableau, basis, width)
    if tableau[-1][-1] != 0:
        raise Infeasible()
    # Drive any artificial variables out of the basis (degenerate rows).
    for r in range(m):
        if basis[r] >= n:
            col = next((j for j in range(n) if tableau[r][j] != 0), None)
            if col is not None:
                _pivot(tableau, basis, r, col)
    keep = [r for r in range(m) if basis[r] < n]
    # Rows still basic in an artificial variable are identically zero on the
    # original columns: redundant constraints, safe to drop.
    tableau = [tableau[r][:n] + [tableau[r][-1]] for r in keep] + [[ZERO] * (n + 1)]
    basis = [basis[r] for r in keep]

    # Phase 2: install the true objective, reduced against the basis.
    obj = costs[:] + [ZERO]
    for r, bvar in enumerate(basis):
        c = obj[bvar]
        if c != 0:
            obj = [a - c * b for a, b in zip(obj, tableau[r])]
    tableau[-1] = obj
    _run_simplex(tableau, basis, n)
    x = [ZERO] * n
    for r, bvar in enumerate(basis):
        x[bvar] = tableau[r][-1]
    value = sum(c * v for c, v in zip(costs, x))
    as_fraction = [Fraction(int(v.numerator), int(v.denominator)) for v in x]
    return Fraction(int(value.numerator), int(value.denominator)), as_fraction
