"""Exact dense linear algebra over any field backend.

Gaussian elimination with full pivoting: the pivot is the remaining
entry of maximal absolute value (exact comparison via ``abs_cmp``,
ties broken by smallest index).  Over truncated Puiseux elements this
keeps precision budgets healthy; over the exact backends it is just a
deterministic choice.
"""

from __future__ import annotations

from .errors import DegenerateInput, PrecisionExhausted


def matvec(A, v):
    return [sum_elems(A[i][j] * v[j] for j in range(len(v))) for i in range(len(A))]


def matmul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    return [[sum_elems(A[i][k] * B[k][j] for k in range(m)) for j in range(p)] for i in range(n)]


def sum_elems(it):
    total = None
    for x in it:
        total = x if total is None else total + x
    if total is None:
        raise ValueError("empty sum over field elements")
    return total


def _is_nonzero(x) -> bool:
    """Certified nonzero: a term survives below the precision budget.

    Truncated zeros count as unusable (not selectable as pivots, and
    consistent as residuals), so over truncated series the results are
    valid modulo the inputs' budgets; over exact backends they are exact.
    """
    try:
        return not x.is_zero()
    except PrecisionExhausted:
        return False


def _full_pivot(M, rows, cols):
    """Index pair of the remaining entry of maximal |.|, or None if all zero."""
    best = None
    for i in rows:
        for j in cols:
            x = M[i][j]
            if not _is_nonzero(x):
                continue
            if best is None or x.abs_cmp(M[best[0]][best[1]]) > 0:
                best = (i, j)
    return best


def _eliminate(field, M, ncols):
    """In-place fraction-free-style elimination; returns pivot list
    [(row, col), ...] in elimination order."""
    nrows = len(M)
    rows = list(range(nrows))
    cols = list(range(ncols))
    pivots = []
    while rows and cols:
        piv = _full_pivot(M, rows, cols)
        if piv is None:
            break
        pi, pj = piv
        pivots.append((pi, pj))
        rows.remove(pi)
        cols.remove(pj)
        inv_p = field.invert(M[pi][pj])
        for i in rows:
            if _is_nonzero(M[i][pj]):
                factor = M[i][pj] * inv_p
                for j in range(len(M[0])):
                    M[i][j] = M[i][j] - factor * M[pi][j]
    return pivots


def rank(field, rows) -> int:
    if not rows:
        return 0
    M = [list(r) for r in rows]
    return len(_eliminate(field, M, len(M[0])))


def det(field, A):
    n = len(A)
    M = [list(r) for r in A]
    pivots = _eliminate(field, M, n)
    if len(pivots) < n:
        return field.zero()
    out = field.one()
    for i, j in pivots:
        out = out * M[i][j]
    # sign of the permutation pairing pivot rows with pivot columns
    perm = [0] * n
    for i, j in pivots:
        perm[j] = i
    sign = 1
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        c = s
        while not seen[c]:
            seen[c] = True
            c = perm[c]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return out if sign > 0 else -out


def solve(field, A, b):
    """Exact solution of the square system A x = b."""
    n = len(A)
    M = [list(A[i]) + [b[i]] for i in range(n)]
    pivots = _eliminate(field, M, n)
    if len(pivots) < n:
        raise DegenerateInput("singular linear system")
    x = [None] * n
    for pi, pj in reversed(pivots):
        acc = M[pi][n]
        for qi, qj in pivots:
            if x[qj] is not None and qj != pj:
                acc = acc - M[pi][qj] * x[qj]
        x[pj] = acc * field.invert(M[pi][pj])
    return x


def inverse(field, A):
    n = len(A)
    cols = []
    for k in range(n):
        e = [field.one() if i == k else field.zero() for i in range(n)]
        cols.append(solve(field, A, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def kernel_vector(field, rows, ncols: int):
    """A nonzero vector in the kernel of the given row system, or None.

    Used for hyperplane normals: rows are the direction vectors the
    normal must annihilate.
    """
    M = [list(r) for r in rows] if rows else []
    pivots = _eliminate(field, M, ncols) if M else []
    pivot_cols = {j for _, j in pivots}
    free = [j for j in range(ncols) if j not in pivot_cols]
    if not free:
        return None
    j0 = free[0]
    x = [field.zero()] * ncols
    x[j0] = field.one()
    for pi, pj in reversed(pivots):
        acc = M[pi][j0]
        for qi, qj in pivots:
            if qj != pj and _is_nonzero(x[qj]):
                acc = acc + M[pi][qj] * x[qj]
        x[pj] = -(acc * field.invert(M[pi][pj]))
    return x


def solve_tall(field, A, b):
    """Exact solution of an overdetermined consistent system A x = b
    (m >= k, full column rank); None if inconsistent or rank-deficient."""
    m, k = len(A), len(A[0]) if A else 0
    M = [list(A[i]) + [b[i]] for i in range(m)]
    pivots = _eliminate(field, M, k)
    if len(pivots) < k:
        return None
    x = [None] * k
    for pi, pj in reversed(pivots):
        acc = M[pi][k]
        for qi, qj in pivots:
            if x[qj] is not None and qj != pj:
                acc = acc - M[pi][qj] * x[qj]
        x[pj] = acc * field.invert(M[pi][pj])
    pivot_rows = {pi for pi, _ in pivots}
    for i in range(m):
        if i in pivot_rows:
            continue
        resid = M[i][k]
        for qi, qj in pivots:
            resid = resid - M[i][qj] * x[qj]
        if _is_nonzero(resid):
            return None
    return x


def solve_2x2_overdetermined(field, A, b):
    """Solve A x = b exactly for a tall matrix with 2 unknowns.

    Picks the 2x2 subsystem with the largest |determinant|, solves it, and
    verifies the remaining equations; returns None if inconsistent.
    """
    n = len(A)
    best = None
    best_det = None
    for i in range(n):
        for j in range(i + 1, n):
            d = A[i][0] * A[j][1] - A[i][1] * A[j][0]
            if not _is_nonzero(d):
                continue
            if best_det is None or d.abs_cmp(best_det) > 0:
                best, best_det = (i, j), d
    if best is None:
        return None
    i, j = best
    inv_d = field.invert(best_det)
    x0 = (b[i] * A[j][1] - b[j] * A[i][1]) * inv_d
    x1 = (A[i][0] * b[j] - A[j][0] * b[i]) * inv_d
    for k in range(n):
        if _is_nonzero(A[k][0] * x0 + A[k][1] * x1 - b[k]):
            return None
    return [x0, x1]
