"""Hilbert pseudo-distance on polytope interiors and the unit disk.

For a polytope interior (always well-bordered) the pseudo-distance is
the log-absolute-value of the boundary cross-ratio along the chord
through the two points.  The same value has an independent dual
formulation as the maximum of point-hyperplane cross-ratios over pairs
of facet functionals; both are implemented and tested against each
other.  The quotient metric space is never materialized: it exists
through ``same_class`` and the distance itself.

The unit disk over the truncated Puiseux field gets its own evaluator:
chord endpoints solve a quadratic whose discriminant square root may
leave the rational coefficient domain, so the evaluator carries the
radical symbolically (coefficients a + b*sqrt(c)) and only ever needs
exact zero tests of such pairs.  Distances still land in the value
group, so four-point checks stay exact.
"""

from __future__ import annotations

from fractions import Fraction

from .convex import Polytope
from .errors import (
    DegenerateInput,
    NotInDisk,
    PointNotInterior,
    PrecisionExhausted,
)
from .fields import PuiseuxField, _fraction_sqrt
from .linalg import sum_elems
from .projective import ProjPoint, affine_point, cross_ratio_mixed


class HilbertDomain:
    """The interior of a polytope with its Hilbert pseudo-distance."""

    def __init__(self, polytope: Polytope):
        self.polytope = polytope
        self.field = polytope.field
        polytope.faces  # build and cache the lattice up front

    def _affine(self, point):
        if isinstance(point, ProjPoint):
            return point.affine()
        return tuple(point)

    def _require_interior(self, x):
        if not self.polytope.contains(x, strict=True):
            raise PointNotInterior(f"point {x} is not strictly interior")

    def _chord_cross_ratio(self, x, y):
        """The multiplicative distance as a field element (>= 1)."""
        field = self.field
        w = tuple(b - a for a, b in zip(x, y))
        params = self.polytope.chord_parameters(x, w)
        if params is None:
            raise PointNotInterior("chord does not meet the interior")
        lo, hi = params
        one = field.one()
        return ((one - lo) * hi) / (lo * (one - hi))

    def mult_distance(self, x, y):
        """Field-valued multiplicative distance: the chord cross-ratio,
        oriented to be >= 1, equal to 1 exactly for equal points."""
        x, y = self._affine(x), self._affine(y)
        self._require_interior(x)
        self._require_interior(y)
        if all((a - b).is_zero() for a, b in zip(x, y)):
            return self.field.one()
        return self._chord_cross_ratio(x, y)

    def distance(self, x, y):
        """Hilbert pseudo-distance via the chord's boundary cross-ratio.

        Exact (a Fraction in the value group) for the non-Archimedean
        backends, a float for the rational backend.
        """
        return self.mult_distance(x, y).log_abs().value

    def distance_dual(self, x, y):
        """Independent formulation: max of log |cross-ratio| over ordered
        pairs of facet functionals."""
        x, y = self._affine(x), self._affine(y)
        self._require_interior(x)
        self._require_interior(y)
        X = affine_point(self.field, x)
        Y = affine_point(self.field, y)
        if X == Y:
            zero = self.field.one().log_abs().value
            return zero
        duals = self.polytope.facet_dual_points()
        best = None
        for phi in duals:
            for psi in duals:
                val = cross_ratio_mixed(phi, X, Y, psi).log_abs()
                if best is None or val > best:
                    best = val
        return best.value

    def same_class(self, x, y) -> bool:
        """Whether the two points map to one point of the quotient space."""
        zero = self.field.one().log_abs().value
        return self.distance(x, y) == zero


# ---------------------------------------------------------------------------
# the unit disk over truncated Puiseux series
# ---------------------------------------------------------------------------


def _merged_log_abs(rational_part, radical_part, radical_square: Fraction):
    """log|p + q*sqrt(c)| for Puiseux series p, q and non-square c > 0.

    Scans the merged term lists in exponent order; a slot (a, b) vanishes
    only when both components do, because sqrt(c) is irrational.
    """
    limit = min(rational_part.tau, radical_part.tau)
    slots: dict = {}
    for e, co in rational_part.terms:
        slots.setdefault(e, [Fraction(0), Fraction(0)])[0] += co
    for e, co in radical_part.terms:
        slots.setdefault(e, [Fraction(0), Fraction(0)])[1] += co
    for e in sorted(slots):
        if e >= limit:
            break  # the other part is unknown from `limit` on
        a, b = slots[e]
        if a or b:
            # a + b*sqrt(c) with rational a, b vanishes only at (0, 0)
            return -e
    raise PrecisionExhausted(limit, "leading term of p + q*sqrt(c) undetermined")


class PuiseuxDisk:
    """The open unit disk over a truncated Puiseux field.

    Distances are exact elements of the value group Q; the associated
    metric space satisfies the four-point condition of a tree, which
    ``four_point_delta`` measures (the defect is 0 exactly).
    """

    def __init__(self, field: PuiseuxField, dim: int = 2, max_retries: int = 1):
        if not isinstance(field, PuiseuxField):
            raise TypeError("the disk evaluator needs the Puiseux backend")
        self.field = field
        self.dim = dim
        self.max_retries = max_retries

    def norm_defect(self, x):
        """1 - sum x_i^2; strictly positive inside the disk."""
        one = self.field.one()
        return one - sum_elems(c * c for c in x)

    def require_inside(self, x):
        if len(x) != self.dim:
            raise NotInDisk("wrong dimension")
        if self.norm_defect(x).sign() <= 0:
            raise NotInDisk(f"{x} is not strictly inside the unit disk")

    def distance(self, x, y) -> Fraction:
        """Hilbert distance between two interior points, exact in Q.

        Retries once with a four-fold budget when a truncation makes a
        leading term undeterminable.
        """
        field = self.field
        for attempt in range(self.max_retries + 1):
            try:
                return self._distance_once(field, x, y)
            except PrecisionExhausted:
                if attempt == self.max_retries:
                    raise
                field = PuiseuxField(field.tau * 4)

    def _distance_once(self, field, x, y) -> Fraction:
        self.require_inside(x)
        self.require_inside(y)
        if all(a == b for a, b in zip(x, y)):
            return Fraction(0)
        w = [b - a for a, b in zip(x, y)]
        A = sum_elems(c * c for c in w)
        B = 2 * sum_elems(a * c for a, c in zip(x, w))
        C = -self.norm_defect(x)
        disc = B * B - 4 * A * C
        if disc.sign() <= 0:
            raise DegenerateInput("chord discriminant is not positive")
        E = -B - 2 * C
        c, g = field._sqrt_scaled(disc)  # sqrt(disc) = sqrt(c) * g
        r = _fraction_sqrt(c)
        if r is not None:
            root = r * g
            plus = (E + root).log_abs().value
            minus = (E - root).log_abs().value
        else:
            plus = _merged_log_abs(E, g, c)
            minus = _merged_log_abs(E, -g, c)
        return abs(plus - minus)

    def four_point_delta(self, w, x, y, z) -> Fraction:
        """Gromov four-point defect: largest pairing sum minus the second
        largest; zero exactly when the four points sit in a tree."""
        d = self.distance
        sums = sorted(
            (
                d(w, x) + d(y, z),
                d(w, y) + d(x, z),
                d(w, z) + d(x, y),
            ),
            reverse=True,
        )
        return sums[0] - sums[1]


def disk_distance(field: PuiseuxField, x, y) -> Fraction:
    return PuiseuxDisk(field, dim=len(x)).distance(x, y)
