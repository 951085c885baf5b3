"""Face lattice, flags, barycentric subdivision and chord tests."""

from fractions import Fraction
from random import Random

import pytest

from valhilb.convex import Polytope
from valhilb.errors import DegenerateInput
from valhilb.fields import get_field
from valhilb.projective import affine_point, line_through
from valhilb.sampling import rand_interior_point
from valhilb.shapes import cube, hexagon, random_integral_polygon, segment, simplex, square

QQ = get_field("rational")
QT = get_field("ratfunc")


def fr(x):
    return QQ.from_fraction(Fraction(x))


class TestFaceLattice:
    def test_square_counts(self):
        P = square(QQ)
        dims = [f.dim for f in P.faces]
        assert dims.count(0) == 4
        assert dims.count(1) == 4
        assert dims.count(2) == 1  # the polytope itself

    def test_hexagon_twelve_maximal_flags(self):
        P = hexagon(QQ)
        assert len(P.maximal_flags) == 12

    def test_simplex_face_counts(self):
        P = simplex(QQ, 3)
        dims = [f.dim for f in P.faces]
        assert [dims.count(k) for k in range(4)] == [4, 6, 4, 1]

    def test_cube_quantities(self):
        P = cube(QQ)
        dims = [f.dim for f in P.faces]
        assert [dims.count(k) for k in range(4)] == [8, 12, 6, 1]
        assert len(P.maximal_flags) == 48  # 8 vertices x 3 edges x 2 facets

    def test_supporting_functionals_certify(self):
        P = hexagon(QQ)
        for face in P.faces[:-1]:
            g, c = face.functional
            for i, v in enumerate(P.vertices):
                val = sum((g[j] * v[j] for j in range(2)), c)
                if i in face.vertex_ids:
                    assert val.sign() == 0
                else:
                    assert val.sign() > 0

    def test_nonextreme_vertex_rejected(self):
        rows = [[-1, -1], [1, -1], [1, 1], [-1, 1], [0, 0]]
        pts = [[fr(c) for c in row] for row in rows]
        with pytest.raises(DegenerateInput):
            Polytope(QQ, pts).faces

    def test_midedge_vertex_rejected(self):
        rows = [[-1, -1], [1, -1], [1, 1], [-1, 1], [0, 1]]
        pts = [[fr(c) for c in row] for row in rows]
        with pytest.raises(DegenerateInput):
            Polytope(QQ, pts).faces

    def test_flat_input_rejected(self):
        pts = [[fr(0), fr(0)], [fr(1), fr(0)], [fr(2), fr(0)]]
        with pytest.raises(DegenerateInput):
            Polytope(QQ, pts).faces

    def test_maximal_flag_dims_cover(self):
        for P in (square(QQ), hexagon(QQ), cube(QQ), simplex(QQ, 2)):
            n = P.ambient_dim
            for fl in P.maximal_flags:
                assert [f.dim for f in fl] == list(range(n + 1))


class TestBarycenters:
    def test_segment_midpoint(self):
        P = segment(QQ, 0, 1)
        assert P.barycenter == (fr(Fraction(1, 2)),)

    def test_standard_simplex(self):
        P = simplex(QQ, 2)
        assert P.barycenter == (fr(Fraction(1, 3)), fr(Fraction(1, 3)))

    def test_integral_barycenters_stay_rational(self):
        P = random_integral_polygon(QT, Random(3), 5)
        assert P.is_integral()
        for face in P.faces:
            for c in P.barycenter_of(face.vertex_ids):
                assert c.as_fraction() is not None

    def test_subdivision_counts(self):
        assert len(simplex(QQ, 2).barycentric_subdivision()) == 6
        assert len(hexagon(QQ).barycentric_subdivision()) == 12
        assert len(cube(QQ).barycentric_subdivision()) == 48


class TestMembershipAndChords:
    def test_barycenter_strictly_inside(self):
        for P in (square(QQ), hexagon(QQ), cube(QQ)):
            assert P.contains(P.barycenter, strict=True)

    def test_vertex_on_boundary(self):
        P = square(QQ)
        assert P.contains(P.vertices[0], strict=False)
        assert not P.contains(P.vertices[0], strict=True)

    def test_far_point_outside(self):
        P = square(QQ)
        assert not P.contains((fr(5), fr(0)))

    def test_square_horizontal_axis(self):
        P = square(QQ)
        line = line_through(
            affine_point(QQ, (fr(0), fr(0))), affine_point(QQ, (fr(Fraction(1, 2)), fr(0)))
        )
        a, b = P.segment_intersection(line)
        assert a == affine_point(QQ, (fr(-1), fr(0)))
        assert b == affine_point(QQ, (fr(1), fr(0)))

    def test_square_diagonal_hits_vertices(self):
        P = square(QQ)
        line = line_through(
            affine_point(QQ, (fr(0), fr(0))),
            affine_point(QQ, (fr(Fraction(1, 3)), fr(Fraction(1, 3)))),
        )
        a, b = P.segment_intersection(line)
        assert {a, b} == {
            affine_point(QQ, (fr(-1), fr(-1))),
            affine_point(QQ, (fr(1), fr(1))),
        }

    def test_missing_line_returns_none(self):
        P = square(QQ)
        line = line_through(
            affine_point(QQ, (fr(5), fr(0))), affine_point(QQ, (fr(5), fr(1)))
        )
        assert P.segment_intersection(line) is None

    def test_chord_endpoints_satisfy_one_facet(self):
        # generic random chord: each endpoint sits on exactly one facet
        rng = Random(5)
        P = random_integral_polygon(QQ, rng, 6)
        hits = 0
        while hits < 25:
            x = rand_interior_point(P, rng)
            y = rand_interior_point(P, rng)
            if x == y:
                continue
            a, b = P.segment_intersection(
                line_through(affine_point(QQ, x), affine_point(QQ, y))
            )
            for endpoint in (a, b):
                coords = endpoint.affine()
                residues = []
                for f in P.facets:
                    g, c = f.functional
                    val = sum((g[j] * coords[j] for j in range(2)), c)
                    residues.append(val.sign())
                assert residues.count(0) == 1
                assert all(s >= 0 for s in residues)
            hits += 1

    def test_interior_parameters_strictly_inside(self):
        rng = Random(6)
        P = hexagon(QQ)
        for _ in range(10):
            x = rand_interior_point(P, rng)
            y = rand_interior_point(P, rng)
            if x == y:
                continue
            w = tuple(b - a for a, b in zip(x, y))
            lo, hi = P.chord_parameters(x, w)
            assert lo.sign() < 0 and (hi - 1).sign() > 0
            for k in range(1, 10):
                s = lo + (hi - lo) * Fraction(k, 10)
                pt = tuple(a + s * d for a, d in zip(x, w))
                assert P.contains(pt, strict=True)


class TestBarcTiling:
    def test_membership_consistency(self):
        # random interior points lie in at least one maximal barycentric
        # simplex, and shared membership happens exactly on shared faces
        from valhilb.linalg import solve

        rng = Random(7)
        P = hexagon(QQ)
        simplices = P.barycentric_subdivision()
        field = QQ
        for _ in range(40):
            x = rand_interior_point(P, rng)
            hom = tuple(x) + (field.one(),)
            containing = []
            for s in simplices:
                A = [
                    [s.vertices[j][i] if i < 2 else field.one() for j in range(3)]
                    for i in range(3)
                ]
                coords = solve(field, A, list(hom))
                if all(c.sign() >= 0 for c in coords):
                    containing.append(s)
            assert containing
            for s1 in containing:
                for s2 in containing:
                    inter = s1.flag.intersect(s2.flag)
                    assert len(inter) >= 1  # they always share the top face


class TestJson:
    def test_round_trip(self):
        P = hexagon(QT)
        Q = Polytope.from_json(QT, P.to_json())
        assert Q.vertices == P.vertices

    def test_field_mismatch(self):
        P = hexagon(QQ)
        with pytest.raises(DegenerateInput):
            Polytope.from_json(QT, P.to_json())

    def test_literals_parse(self):
        text = '{"field": "ratfunc", "dim": 1, "vertices": [["-1"], ["1 - 1/2 t"]], "subfield": "Q"}'
        P = Polytope.from_json(QT, text)
        assert P.vertices[1][0] == QT.one() - QT.t() / 2
