"""Exact rational linear programming by a dense two-phase simplex method.

Solves   min c.x   subject to   A x <= b,  x >= 0

entirely in Fraction arithmetic with Bland's pivoting rule, so the
optimum is exact and cycling is impossible.  Problem sizes here are tiny
(tens of variables), which is why a dense tableau with maintained
reduced-cost rows is the right tool.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import LPInfeasible, LPUnbounded

_ZERO = Fraction(0)
_ONE = Fraction(1)


def solve_lp(c, A, b):
    """Minimize c.x over {A x <= b, x >= 0}; returns (value, x)."""
    m = len(A)
    n = len(c)
    c = [Fraction(v) for v in c]
    rows = [[Fraction(v) for v in row] for row in A]
    rhs = [Fraction(v) for v in b]

    # slack variables turn rows into equalities; rows with negative
    # right-hand side are negated and receive an artificial variable
    art_rows = [i for i in range(m) if rhs[i] < 0]
    n_art = len(art_rows)
    width = n + m + n_art
    art_pos = {i: n + m + k for k, i in enumerate(art_rows)}

    tab = []
    basis = []
    for i in range(m):
        row = [_ZERO] * (width + 1)
        sign = -_ONE if i in art_pos else _ONE
        for j in range(n):
            if rows[i][j]:
                row[j] = sign * rows[i][j]
        row[n + i] = sign  # slack
        if i in art_pos:
            row[art_pos[i]] = _ONE
            basis.append(art_pos[i])
        else:
            basis.append(n + i)
        row[width] = sign * rhs[i]
        tab.append(row)

    def pivot(r, col, cost_rows):
        piv = tab[r][col]
        if piv != 1:
            inv = 1 / piv
            tab[r] = [v * inv for v in tab[r]]
        prow = tab[r]
        for i in range(m):
            if i != r:
                f = tab[i][col]
                if f:
                    tab[i] = [a - f * bb for a, bb in zip(tab[i], prow)]
        for cr in cost_rows:
            f = cr[col]
            if f:
                for j in range(width + 1):
                    if prow[j]:
                        cr[j] -= f * prow[j]
        basis[r] = col

    def reduced(cost):
        r = list(cost) + [_ZERO]
        for i, bi in enumerate(basis):
            f = r[bi]
            if f:
                row = tab[i]
                for j in range(width + 1):
                    if row[j]:
                        r[j] -= f * row[j]
        return r

    def run_simplex(r, other, allowed_end):
        cost_rows = [r] if other is None else [r, other]
        while True:
            entering = -1
            for j in range(allowed_end):
                if r[j] < 0:
                    entering = j  # Bland: first improving index
                    break
            if entering < 0:
                return
            leaving = -1
            best = None
            for i in range(m):
                a = tab[i][entering]
                if a > 0:
                    ratio = tab[i][width] / a
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leaving]
                    ):
                        best = ratio
                        leaving = i
            if leaving < 0:
                raise LPUnbounded("objective decreases without bound")
            pivot(leaving, entering, cost_rows)

    cost2 = c + [_ZERO] * (m + n_art)
    r2 = reduced(cost2)

    if n_art:
        cost1 = [_ZERO] * (n + m) + [_ONE] * n_art
        r1 = reduced(cost1)
        run_simplex(r1, r2, width)
        infeas = sum(tab[i][width] for i in range(m) if basis[i] >= n + m)
        if infeas != 0:
            raise LPInfeasible("no feasible point")
        # pivot any artificial still basic (at zero level) out of the basis
        for i in range(m):
            if basis[i] >= n + m:
                for j in range(n + m):
                    if tab[i][j] != 0:
                        pivot(i, j, [r2])
                        break

    run_simplex(r2, None, n + m)

    x = [_ZERO] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][width]
    value = sum(ci * xi for ci, xi in zip(c, x))
    return value, x
