"""The model flat: tuples of value-group elements modulo the diagonal.

Vectors are gauge-fixed so the last entry is 0 (rather than summing to
zero, which would need the value group to be divisible).  The norm of a
class is max_i a_i - min_i a_i, and the closed Weyl chamber consists of
the descending vectors; its faces are cut out by which descents are
allowed to be strict.
"""

from __future__ import annotations

from .errors import DimensionMismatch, NotInOpenSimplex
from .linalg import solve


def gauge(values) -> tuple:
    """Normal form of a class modulo the diagonal: last entry 0."""
    vals = tuple(values)
    last = vals[-1]
    return tuple(v - last for v in vals)


def dH(u, v):
    """The flat's metric: max minus min of the difference vector."""
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        raise DimensionMismatch("flat vectors of different dimension")
    diff = [a - b for a, b in zip(u, v)]
    return max(diff) - min(diff)


def norm(u):
    """Distance to the cone point; for a descending u this is u_1 - u_d."""
    return max(u) - min(u)


def is_descending(values) -> bool:
    vals = tuple(values)
    return all(vals[i] >= vals[i + 1] for i in range(len(vals) - 1))


def descents(values) -> frozenset:
    """Positions j (1-based) where a_j > a_{j+1}: the smallest face type
    containing the vector."""
    vals = tuple(values)
    return frozenset(
        j + 1 for j in range(len(vals) - 1) if vals[j] > vals[j + 1]
    )


def in_face(values, D) -> bool:
    """Membership in the Weyl-chamber face of type D: descending, with
    equality forced at every position outside D."""
    return is_descending(values) and descents(values) <= frozenset(D)


def weyl_point(values) -> tuple:
    """Gauge-fix and certify membership in the closed Weyl chamber."""
    vals = gauge(values)
    if not is_descending(vals):
        raise NotInOpenSimplex("vector is not descending")
    return vals


def log_map(field, basis, point) -> tuple:
    """Coordinates of a point of the open simplex of a basis, mapped to
    the flat: the gauge-fixed vector of log-absolute-values.

    ``basis`` is a sequence of d homogeneous vectors; the point must have
    strictly positive coordinates in it (up to a global sign).
    """
    d = len(basis)
    A = [[basis[j][i] for j in range(d)] for i in range(d)]
    coords = solve(field, A, list(point.coords))
    signs = [c.sign() for c in coords]
    if all(s < 0 for s in signs):
        coords = [-c for c in coords]
    elif not all(s > 0 for s in signs):
        raise NotInOpenSimplex("coordinates are not strictly one-signed")
    return gauge(tuple(c.log_abs().value for c in coords))
