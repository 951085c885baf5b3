"""Seeded random generators for field elements, points and polytopes.

Everything takes an explicit ``random.Random`` so callers are
bit-reproducible given a seed.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .fields import PuiseuxField, RationalField, RationalFunctionField


def rand_fraction(rng: Random, max_num: int = 9, max_den: int = 9, nonzero: bool = False) -> Fraction:
    while True:
        fr = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        if fr or not nonzero:
            return fr


def rand_positive_fraction(rng: Random, max_num: int = 9, max_den: int = 9) -> Fraction:
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def rand_element(field, rng: Random, nonzero: bool = False):
    """A small random element of the backend."""
    if isinstance(field, RationalField):
        return field.from_fraction(rand_fraction(rng, nonzero=nonzero))
    if isinstance(field, RationalFunctionField):
        while True:
            num = [rand_fraction(rng, 5, 4) for _ in range(rng.randint(1, 3))]
            den = [rand_fraction(rng, 5, 4) for _ in range(rng.randint(1, 2))]
            den[-1] = rand_fraction(rng, 5, 4, nonzero=True)
            x = field.from_polys(tuple(num), tuple(den))
            if not field.is_zero(x) or not nonzero:
                return x
    if isinstance(field, PuiseuxField):
        while True:
            nterms = rng.randint(1, 3)
            exps = rng.sample(range(-2, 7), nterms)
            terms = [(Fraction(e, rng.choice((1, 1, 2))), rand_fraction(rng, 5, 4, nonzero=True))
                     for e in exps]
            x = field.from_terms(terms)
            if x.terms or not nonzero:
                return x
    raise TypeError(f"no sampler for {field!r}")


def rand_positive(field, rng: Random):
    """A random strictly positive element."""
    x = rand_element(field, rng, nonzero=True)
    return x if x.sign() > 0 else -x


def rand_unit_weight(field, rng: Random):
    """A positive element of bounded size, useful as a convex weight."""
    if isinstance(field, RationalField):
        return field.from_fraction(rand_positive_fraction(rng))
    if isinstance(field, RationalFunctionField):
        # q_a * t**k + q_b with positive rationals stays positive (t > 0)
        k = rng.randint(0, 2)
        qa = rand_positive_fraction(rng, 6, 4)
        qb = rand_positive_fraction(rng, 6, 4)
        t = field.t()
        return t ** k * qa + qb if k else field.from_fraction(qa + qb)
    if isinstance(field, PuiseuxField):
        k = Fraction(rng.randint(0, 4), rng.choice((1, 2)))
        qa = rand_positive_fraction(rng, 6, 4)
        qb = rand_positive_fraction(rng, 6, 4)
        return field.from_terms([(Fraction(0), qb), (k, qa)])
    raise TypeError(f"no sampler for {field!r}")


def rand_interior_point(polytope, rng: Random):
    """A random strictly interior point: a positive convex combination of
    all vertices with small random weights."""
    field = polytope.field
    weights = [rand_unit_weight(field, rng) for _ in polytope.vertices]
    total = weights[0]
    for w in weights[1:]:
        total = total + w
    inv = field.invert(total)
    n = polytope.ambient_dim
    coords = []
    for j in range(n):
        acc = weights[0] * polytope.vertices[0][j]
        for w, v in zip(weights[1:], polytope.vertices[1:]):
            acc = acc + w * v[j]
        coords.append(acc * inv)
    return tuple(coords)


def rand_invertible_matrix(field, rng: Random, d: int):
    """A random invertible d x d matrix over the backend."""
    from .linalg import det

    while True:
        m = [[rand_element(field, rng) for _ in range(d)] for _ in range(d)]
        try:
            if not det(field, m).is_zero():
                return m
        except Exception:
            continue
