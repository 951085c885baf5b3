"""Projective points, hyperplanes, charts and cross-ratios.

Points and dual points are stored in a canonical normalization: the
coordinate of maximal absolute value (ties broken by lowest index) is
scaled to 1, so projective equality is plain coordinate equality.

Cross-ratios are evaluated through exact homogeneous parameters on the
line: every point gets a parameter pair (alpha, beta) with respect to
two base points, and the cross-ratio is a ratio of 2x2 determinants of
those pairs.  This keeps the value lift-independent and handles points
at infinity without case splits; the conventional values 0/0 = 1,
z/0 = infinity, z/infinity = 0 come out of the determinant form.
Infinity is a tagged singleton, not a field element.
"""

from __future__ import annotations

from .errors import (
    DegenerateConfiguration,
    DegenerateInput,
    DegenerateQuadruple,
    DimensionMismatch,
    IdenticalPoints,
    NotCollinear,
    PointAtInfinity,
)
from .linalg import rank, solve, solve_2x2_overdetermined, sum_elems


class _Infinity:
    """The point at infinity of F u {oo}, used as a cross-ratio value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


def _normalize(field, coords):
    from .errors import PrecisionExhausted

    pivot = None
    undetermined = None
    for i, c in enumerate(coords):
        try:
            if c.is_zero():
                continue
        except PrecisionExhausted as exc:
            undetermined = exc  # no certified term; unusable as pivot
            continue
        if pivot is None or c.abs_cmp(coords[pivot]) > 0:
            pivot = i
    if pivot is None:
        if undetermined is not None:
            raise undetermined
        raise DegenerateInput("all homogeneous coordinates are zero")
    inv = field.invert(coords[pivot])
    return tuple(c * inv for c in coords)


class ProjPoint:
    """A point of P(F^d) in canonical homogeneous coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = _normalize(field, tuple(coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.field is other.field and all(
            (a - b).is_zero() for a, b in zip(self.coords, other.coords)
        )

    def __hash__(self):
        # canonical normalization makes representation equality agree
        # with projective equality, so hashing coordinates is safe
        return hash(self.coords)

    def __repr__(self):
        return "ProjPoint[" + " : ".join(str(c) for c in self.coords) + "]"

    def affine(self):
        """Coordinates in the standard chart (last coordinate scaled to 1)."""
        last = self.coords[-1]
        if last.is_zero():
            raise PointAtInfinity("last homogeneous coordinate vanishes")
        inv = self.field.invert(last)
        return tuple(c * inv for c in self.coords[:-1])


class DualPoint:
    """A projective hyperplane, i.e. a linear functional up to scale."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = _normalize(field, tuple(coeffs))

    def __call__(self, point: ProjPoint):
        if len(self.coeffs) != point.dim:
            raise DimensionMismatch("functional and point dimensions differ")
        return sum_elems(c * x for c, x in zip(self.coeffs, point.coords))

    def __eq__(self, other):
        if not isinstance(other, DualPoint):
            return NotImplemented
        return all((a - b).is_zero() for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        return "DualPoint[" + " : ".join(str(c) for c in self.coeffs) + "]"


def affine_point(field, coords) -> ProjPoint:
    """Lift affine coordinates into the standard chart."""
    return ProjPoint(field, tuple(coords) + (field.one(),))


def line_value_point(field, value) -> ProjPoint:
    """Embed an element of F u {INFINITY} into the projective line P(F^2)."""
    if value is INFINITY:
        return ProjPoint(field, (field.one(), field.zero()))
    return ProjPoint(field, (value, field.one()))


class AffineChart:
    """The chart associated with an ordered basis e of F^d.

    Maps (x_1, ..., x_{d-1}) to the projective class of
    x_1 e_1 + ... + x_{d-1} e_{d-1} + e_d.
    """

    __slots__ = ("field", "basis")

    def __init__(self, field, basis):
        self.field = field
        self.basis = tuple(tuple(v) for v in basis)
        d = len(self.basis)
        if any(len(v) != d for v in self.basis):
            raise DimensionMismatch("chart basis must be square")

    @classmethod
    def standard(cls, field, d: int) -> "AffineChart":
        one, zero = field.one(), field.zero()
        return cls(field, [[one if i == j else zero for i in range(d)] for j in range(d)])

    def apply(self, coords) -> ProjPoint:
        coords = tuple(coords) + (self.field.one(),)
        if len(coords) != len(self.basis):
            raise DimensionMismatch("chart expects d-1 affine coordinates")
        d = len(self.basis)
        vec = [
            sum_elems(coords[j] * self.basis[j][i] for j in range(d))
            for i in range(d)
        ]
        return ProjPoint(self.field, vec)

    def invert(self, point: ProjPoint):
        d = len(self.basis)
        A = [[self.basis[j][i] for j in range(d)] for i in range(d)]
        c = solve(self.field, A, list(point.coords))
        if c[-1].is_zero():
            raise PointAtInfinity("point lies on the chart's hyperplane at infinity")
        inv = self.field.invert(c[-1])
        return tuple(ci * inv for ci in c[:-1])


class ProjLine:
    """A projective line spanned by two distinct points."""

    __slots__ = ("field", "p", "q")

    def __init__(self, p: ProjPoint, q: ProjPoint):
        if p == q:
            raise IdenticalPoints("a line needs two distinct points")
        self.field = p.field
        self.p = p
        self.q = q

    def parameter_pair(self, z: ProjPoint):
        """Homogeneous parameters (alpha, beta) with z = alpha p + beta q,
        or None when z is not on the line."""
        A = [[self.p.coords[i], self.q.coords[i]] for i in range(z.dim)]
        return solve_2x2_overdetermined(self.field, A, list(z.coords))


def line_through(x: ProjPoint, y: ProjPoint) -> ProjLine:
    return ProjLine(x, y)


def collinear(points) -> bool:
    pts = list(points)
    field = pts[0].field
    return rank(field, [list(p.coords) for p in pts]) <= 2


def _distinct_pair(points):
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if not points[i] == points[j]:
                return points[i], points[j]
    return None


def _check_no_three_equal(points):
    # classes under projective equality; any class of size >= 3 is degenerate
    reps: list = []
    counts: list = []
    for p in points:
        for k, r in enumerate(reps):
            if p == r:
                counts[k] += 1
                break
        else:
            reps.append(p)
            counts.append(1)
    if any(c >= 3 for c in counts):
        raise DegenerateQuadruple("three of the four points coincide")


def cross_ratio_points(a: ProjPoint, x: ProjPoint, y: ProjPoint, b: ProjPoint):
    """Cross-ratio of four collinear points, in F u {INFINITY}.

    Normalized so that the quadruple (0, 1, z, infinity) in an affine
    line has cross-ratio z.
    """
    pts = [a, x, y, b]
    field = a.field
    _check_no_three_equal(pts)
    base = _distinct_pair(pts)
    if base is None:  # all four equal is impossible after the check above
        raise DegenerateQuadruple("points span no line")
    line = ProjLine(*base)
    params = []
    for p in pts:
        pair = line.parameter_pair(p)
        if pair is None:
            raise NotCollinear("the four points do not lie on one line")
        params.append(pair)
    pa, px, py, pb = params

    def n(u, v):
        return u[1] * v[0] - u[0] * v[1]

    num = n(py, pa) * n(px, pb)
    den = n(px, pa) * n(py, pb)
    if den.is_zero():
        if num.is_zero():
            raise DegenerateQuadruple("cross-ratio of the form 0/0")
        return INFINITY
    return num * field.invert(den)


def cross_ratio_mixed(phi: DualPoint, x: ProjPoint, y: ProjPoint, psi: DualPoint):
    """Cross-ratio of two points and two hyperplanes.

    Lift-independent; equals the point cross-ratio taken at the
    intersections of the line xy with the two hyperplanes.
    """
    field = x.field
    px, py = phi(x), phi(y)
    qx, qy = psi(x), psi(y)
    same_point = x == y
    same_kernel = phi == psi
    if same_point and (px.is_zero() or qx.is_zero()):
        raise DegenerateConfiguration("x = y inside one of the kernels")
    if same_kernel and (px.is_zero() or py.is_zero()):
        raise DegenerateConfiguration("a point lies in the coinciding kernels")

    def ratio(nu, de):
        if de.is_zero():
            return field.one() if nu.is_zero() else INFINITY
        return nu * field.invert(de)

    f1 = ratio(qx, qy)
    f2 = ratio(py, px)
    if f1 is INFINITY or f2 is INFINITY:
        other = f2 if f1 is INFINITY else f1
        if other is not INFINITY and other.is_zero():
            raise DegenerateConfiguration("indeterminate product 0 * infinity")
        return INFINITY
    return f1 * f2


def _param_value(field, pair):
    alpha, beta = pair
    if alpha.is_zero():
        return INFINITY
    return beta * field.invert(alpha)


def _cyclically_ordered(values) -> bool:
    # one descent around the cycle, with INFINITY as the greatest element
    def less(u, v):
        if u is INFINITY:
            return False
        if v is INFINITY:
            return True
        return u.compare(v) < 0

    n = len(values)
    descents = sum(0 if less(values[i], values[(i + 1) % n]) else 1 for i in range(n))
    return descents == 1


def positively_oriented(a: ProjPoint, x: ProjPoint, y: ProjPoint, b: ProjPoint) -> bool:
    """Whether (a, x, y, b) or its reversal is cyclically ordered on the line."""
    pts = [a, x, y, b]
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i] == pts[j]:
                raise DegenerateQuadruple("orientation needs four distinct points")
    field = a.field
    line = ProjLine(a, x)
    params = []
    for p in pts:
        pair = line.parameter_pair(p)
        if pair is None:
            raise NotCollinear("the four points do not lie on one line")
        params.append(_param_value(field, pair))
    sa, sx, sy, sb = params
    return _cyclically_ordered([sa, sx, sy, sb]) or _cyclically_ordered([sb, sy, sx, sa])
