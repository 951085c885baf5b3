"""Stock polytopes used across tests, demos and the CLI fixtures."""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .convex import Polytope


def _pts(field, rows):
    return [[field.from_fraction(Fraction(c)) for c in row] for row in rows]


def segment(field, a=-1, b=1) -> Polytope:
    return Polytope(field, _pts(field, [[a], [b]]))


def square(field) -> Polytope:
    return Polytope(field, _pts(field, [[-1, -1], [1, -1], [1, 1], [-1, 1]]))


def hexagon(field) -> Polytope:
    """A hexagon with rational vertices and a full dihedral symmetry group
    of order 12 inside GL(2, Q).

    The linear map m = [[1/2, -3/4], [1, 1/2]] permutes the six vertices
    cyclically and (x, y) -> (x, -y) reverses them, so all twelve
    symmetries act by rational matrices even though a regular hexagon
    would need irrational coordinates.
    """
    return Polytope(
        field, _pts(field, [[2, 0], [1, 2], [-1, 2], [-2, 0], [-1, -2], [1, -2]])
    )


def hexagon_symmetries():
    """Generators and all 12 elements of the hexagon's symmetry group as
    2x2 rational matrices."""
    rot = ((Fraction(1, 2), Fraction(-3, 4)), (Fraction(1), Fraction(1, 2)))
    refl = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-1)))

    def mul(a, b):
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2))
            for i in range(2)
        )

    group = []
    m = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    for _ in range(6):
        group.append(m)
        group.append(mul(refl, m))
        m = mul(rot, m)
    return group


def square_symmetries():
    """The eight symmetries of the square as 2x2 rational matrices."""
    rot = ((Fraction(0), Fraction(-1)), (Fraction(1), Fraction(0)))
    refl = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-1)))

    def mul(a, b):
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2))
            for i in range(2)
        )

    group = []
    m = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    for _ in range(4):
        group.append(m)
        group.append(mul(refl, m))
        m = mul(rot, m)
    return group


def cube(field) -> Polytope:
    rows = [[x, y, z] for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    return Polytope(field, _pts(field, rows))


def simplex(field, n: int) -> Polytope:
    """The standard affine n-simplex conv(0, e_1, ..., e_n)."""
    rows = [[0] * n]
    for i in range(n):
        row = [0] * n
        row[i] = 1
        rows.append(row)
    return Polytope(field, _pts(field, rows))


def ngon(field, n: int, seed: int = 0) -> Polytope:
    """An n-gon with rational vertices on the unit circle.

    Distinct rational points of a circle are automatically in convex
    position (a line meets a circle at most twice), so any choice of
    parameters gives rational vertices that are all extreme.
    """
    return random_integral_polygon(field, Random(seed), n)


def random_integral_polygon(field, rng: Random, nverts: int) -> Polytope:
    """A random convex polygon with vertices in Q^2 on the unit circle.

    Circle points come from the rational parametrization
    s -> ((1 - s^2)/(1 + s^2), 2s/(1 + s^2)); sorting the parameters
    walks the circle monotonically, so vertices come out in cyclic order.
    """
    params: set = set()
    while len(params) < nverts:
        params.add(Fraction(rng.randint(-60, 60), rng.randint(1, 20)))
    rows = []
    for s in sorted(params):
        den = 1 + s * s
        rows.append([(1 - s * s) / den, 2 * s / den])
    return Polytope(field, _pts(field, rows))
