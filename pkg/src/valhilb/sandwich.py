"""Inner and outer simplices around a polytope, one pair per maximal flag.

Given a maximal flag of a full-dimensional polytope, the inner
construction walks the flag upward: the new basis point at each level is
the barycenter of the vertices that the face gains, which keeps the
barycenter line straight and makes the flag's barycentric simplex a
barycentric simplex of the result.  The outer construction also recurses
along the flag; at each level it shears the face's complement into the
open positive cone (searching the shear factor by doubling with exact
sign certificates), scales the previous simplex just enough to cover the
sheared vertices, and places an apex at twice the maximal sheared
height.  Both searches certify their output; the shear and scaling are
one admissible instantiation of choices the construction leaves free.

Basis vectors are ordered along the flag and lifted so that the flag's
barycentric simplex is exactly the set of points with descending
positive inner-basis coordinates; this is the chamber chart downstream
modules rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .convex import Flag, Polytope
from .errors import DegenerateFlag, SearchFailed
from .fields import LogAbs
from .linalg import det, inverse, matvec, solve, solve_tall, sum_elems
from .projective import ProjPoint

_SHEAR_CAP = 2 ** 64


def _hom(field, affine):
    return list(affine) + [field.one()]


def _face_chain(flag: Flag):
    faces = list(flag)
    if any(faces[i + 1].dim != faces[i].dim + 1 for i in range(len(faces) - 1)):
        raise DegenerateFlag("flag is not a complete chain of faces")
    if faces[0].dim != 0:
        raise DegenerateFlag("flag must start at a vertex")
    return faces


def _inner_vertex_list(P: Polytope, faces):
    """Affine vertices of the inner simplex, ordered along the flag."""
    first = min(faces[0].vertex_ids)
    pts = [P.vertices[first]]
    for lower, upper in zip(faces, faces[1:]):
        gained = upper.vertex_ids - lower.vertex_ids
        if not gained:
            raise DegenerateFlag("consecutive faces share all vertices")
        pts.append(P.barycenter_of(gained))
    return pts


def inner_simplex(P: Polytope, flag: Flag):
    """Basis e with S_e inside P and the flag's barycentric simplex a
    barycentric simplex of S_e with respect to the polytope barycenter.

    The lifts are chosen so that the partial sums e_1 + ... + e_j are the
    barycenters of the flag's faces; in particular the full sum is the
    barycenter of P.
    """
    field = P.field
    faces = _face_chain(flag)
    pts = _inner_vertex_list(P, faces)
    targets = [P.barycenter_of(f.vertex_ids) for f in faces]
    d = P.ambient_dim + 1

    basis = [_hom(field, pts[0])]
    partial = list(basis[0])
    for j in range(1, d):
        w = _hom(field, pts[j])
        c = _hom(field, targets[j])
        # partial + lam * w = nu * c, two unknowns across d equations
        A = [[w[i], c[i]] for i in range(d)]
        rhs = [-partial[i] for i in range(d)]
        sol = solve_tall(field, A, rhs)
        if sol is None:
            raise DegenerateFlag("barycenter alignment failed along the flag")
        lam, nu = sol[0], -sol[1]
        if lam.sign() <= 0 or nu.sign() <= 0:
            raise DegenerateFlag("alignment produced a nonpositive lift")
        e_j = [lam * wi for wi in w]
        basis.append(e_j)
        partial = [p + v for p, v in zip(partial, e_j)]
    return [tuple(v) for v in basis]


def _frame_coordinates(field, origin, dirs, point):
    """Coordinates of (point - origin) in the given direction vectors."""
    n = len(origin)
    A = [[dirs[j][i] for j in range(len(dirs))] for i in range(n)]
    b = [point[i] - origin[i] for i in range(n)]
    return solve_tall(field, A, b)


def _outer_vertex_list(P: Polytope, faces):
    field = P.field
    first = min(faces[0].vertex_ids)
    origin = P.vertices[first]
    pts = [origin]
    for level, (lower, upper) in enumerate(zip(faces, faces[1:]), start=2):
        k = level  # simplex at this level has k vertices
        if len(upper.vertex_ids) == k:
            # the face is itself a simplex and is its own cover; its
            # vertices in flag order keep the flag-simplex property
            pts = _inner_vertex_list(P, faces[:level])
            continue
        dirs = [tuple(p[i] - origin[i] for i in range(len(origin))) for p in pts[1:]]
        off = [i for i in upper.vertex_ids if i not in lower.vertex_ids]
        z = None
        for i in sorted(off):
            cand = tuple(P.vertices[i][j] - origin[j] for j in range(len(origin)))
            if _frame_coordinates(field, origin, dirs, P.vertices[i]) is None:
                z = cand
                break
        if z is None:
            raise DegenerateFlag("face gains no vertex outside the previous span")
        frame = dirs + [z]

        coords = []
        for i in sorted(upper.vertex_ids):
            c = _frame_coordinates(field, origin, frame, P.vertices[i])
            if c is None:
                raise DegenerateFlag("vertex outside the face's own span")
            coords.append(c)
        # the span of the lower face must be a supporting hyperplane here
        if any(c[-1].sign() < 0 for c in coords):
            raise DegenerateFlag("face is not on one side of its sub-face span")

        # shear u = c * (1, ..., 1), doubling until every off-hyperplane
        # vertex lands in the open positive cone
        shear = field.zero()
        if k > 2:
            cval = Fraction(1)
            while True:
                shear = field.from_fraction(cval)
                ok = True
                for c in coords:
                    s = c[-1]
                    if s.sign() == 0:
                        continue
                    for xi in c[:-1]:
                        if (xi + s * shear).sign() <= 0:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    break
                cval *= 2
                if cval > _SHEAR_CAP:
                    raise SearchFailed(
                        f"shear factor exceeded {_SHEAR_CAP} at flag level {k}"
                    )

        sheared = [
            ([xi + c[-1] * shear for xi in c[:-1]], c[-1]) for c in coords
        ]
        smax = None
        for _, s in sheared:
            if smax is None or s.compare(smax) > 0:
                smax = s
        if smax is None or smax.sign() <= 0:
            raise DegenerateFlag("face adds no height over its sub-face")
        h = 2 * smax

        # smallest admissible scaling of the previous simplex
        alpha = field.one()
        for xs, s in sheared:
            if xs:
                total = sum_elems(xs) if len(xs) > 1 else xs[0]
                bound = total / (field.one() - s / h)
                if bound.compare(alpha) > 0:
                    alpha = bound

        new_pts = [origin]
        for u in dirs:
            new_pts.append(tuple(origin[i] + alpha * u[i] for i in range(len(origin))))
        apex = list(origin)
        for u in dirs:
            for i in range(len(origin)):
                apex[i] = apex[i] - h * shear * u[i]
        for i in range(len(origin)):
            apex[i] = apex[i] + h * z[i]
        new_pts.append(tuple(apex))
        pts = new_pts
    return pts


def outer_simplex(P: Polytope, flag: Flag):
    """Basis e' with P inside S_{e'} and the flag's barycentric simplex a
    flag simplex of S_{e'}.

    When the polytope is itself a simplex the inner basis is returned
    unchanged, making the base-change matrix the identity.  Otherwise
    vertex lifts have last coordinate 1.
    """
    faces = _face_chain(flag)
    if len(P.vertices) == P.ambient_dim + 1:
        return inner_simplex(P, flag)
    pts = _outer_vertex_list(P, faces)
    return [tuple(_hom(P.field, p)) for p in pts]


# ---------------------------------------------------------------------------
# base-change predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BaseChangeReport:
    in_PD_of_O: bool
    nonnegative: bool
    SD_equal: bool
    matrix: tuple


def base_change_matrix(field, e, e2):
    """M with columns the coordinates of the vectors of e in the basis e2."""
    d = len(e)
    A = [[e2[j][i] for j in range(d)] for i in range(d)]
    cols = [solve(field, A, list(v)) for v in e]
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def _block_of(index: int, boundaries) -> int:
    b = 0
    for cut in boundaries:
        if index <= cut:
            return b
        b += 1
    return b


def check_base_change(field, e, e2, D) -> BaseChangeReport:
    """Evaluate the base-change hypotheses for the face type D.

    ``in_PD_of_O``: M is block upper triangular for D's block structure
    and lies in GL(d, O) (all entries of size at most 1, determinant of
    size exactly 1).  ``nonnegative``: all entries are >= 0.
    ``SD_equal``: the partial sums of the two bases at the block
    boundaries agree projectively, i.e. the face simplices coincide.
    """
    d = len(e)
    M = base_change_matrix(field, e, e2)
    boundaries = sorted(D) + [d]

    zero_log = LogAbs(Fraction(0))
    in_O = True
    block_ut = True
    nonneg = True
    for i in range(d):
        for j in range(d):
            entry = M[i][j]
            if not entry.is_zero():
                if entry.log_abs() > zero_log:
                    in_O = False
                if entry.sign() < 0:
                    nonneg = False
                if _block_of(i + 1, boundaries) > _block_of(j + 1, boundaries):
                    block_ut = False
    dm = det(field, M)
    unit_det = (not dm.is_zero()) and dm.log_abs() == zero_log
    in_pd = in_O and block_ut and unit_det

    sd_equal = True
    for cut in boundaries:
        v = [sum_elems(e[j][i] for j in range(cut)) for i in range(d)]
        v2 = [sum_elems(e2[j][i] for j in range(cut)) for i in range(d)]
        if not ProjPoint(field, v) == ProjPoint(field, v2):
            sd_equal = False
            break

    return BaseChangeReport(
        in_PD_of_O=in_pd,
        nonnegative=nonneg,
        SD_equal=sd_equal,
        matrix=tuple(tuple(row) for row in M),
    )


@dataclass(frozen=True)
class SandwichPair:
    flag: Flag
    inner: tuple
    outer: tuple
    report: BaseChangeReport


def build_sandwich(P: Polytope, flag: Flag) -> SandwichPair:
    """Inner and outer bases for a maximal flag, with the base-change
    report for the full type D = {1, ..., d-1}."""
    e = inner_simplex(P, flag)
    e2 = outer_simplex(P, flag)
    d = P.ambient_dim + 1
    report = check_base_change(P.field, e, e2, range(1, d))
    return SandwichPair(flag=flag, inner=tuple(e), outer=tuple(e2), report=report)


# ---------------------------------------------------------------------------
# certification oracles (used by tests and the CLI `sandwich` command)
# ---------------------------------------------------------------------------


def simplex_contains(field, basis, point_hom) -> bool:
    """Membership of a homogeneous point in the closed simplex of a basis:
    all basis coordinates weakly one-signed."""
    d = len(basis)
    A = [[basis[j][i] for j in range(d)] for i in range(d)]
    coords = solve(field, A, list(point_hom))
    signs = [c.sign() for c in coords]
    return all(s >= 0 for s in signs) or all(s <= 0 for s in signs)


def certify_sandwich(P: Polytope, pair: SandwichPair) -> dict:
    """Exact certificates: inner containment, outer containment, the
    barycentric partial-sum property, and the flag-simplex property."""
    field = P.field
    faces = list(pair.flag)
    d = P.ambient_dim + 1

    inner_inside = all(
        P.contains(ProjPoint(field, v), strict=False) for v in pair.inner
    )
    outer_covers = all(
        simplex_contains(field, pair.outer, P.homogeneous_vertex(i))
        for i in range(len(P.vertices))
    )

    barycentric = True
    for j in range(1, d + 1):
        partial = [sum_elems(pair.inner[k][i] for k in range(j)) for i in range(d)]
        target = _hom(field, P.barycenter_of(faces[j - 1].vertex_ids))
        if not ProjPoint(field, partial) == ProjPoint(field, target):
            barycentric = False
            break

    flag_simplex_outer = True
    for j in range(1, d + 1):
        target = _hom(field, P.barycenter_of(faces[j - 1].vertex_ids))
        A = [[pair.outer[k][i] for k in range(j)] for i in range(d)]
        coeffs = solve_tall(field, A, target)
        if coeffs is None or any(c.sign() <= 0 for c in coeffs):
            flag_simplex_outer = False
            break

    # SD_equal is deliberately not part of the sandwich certificate: the
    # outer simplex only shares the flag simplex as a *flag* simplex, so
    # its descending-coordinate chart strictly contains it in general.
    return {
        "inner_inside": inner_inside,
        "outer_covers": outer_covers,
        "barycentric": barycentric,
        "flag_simplex_outer": flag_simplex_outer,
        "in_PD_of_O": pair.report.in_PD_of_O,
        "nonnegative": pair.report.nonnegative,
    }
