"""Inner/outer simplex constructions and base-change lemma checks."""

from fractions import Fraction
from random import Random

from valhilb import modelflat
from valhilb.fields import get_field
from valhilb.hilbert import HilbertDomain
from valhilb.linalg import sum_elems
from valhilb.projective import ProjPoint
from valhilb.sandwich import (
    build_sandwich,
    certify_sandwich,
    check_base_change,
    inner_simplex,
    outer_simplex,
)
from valhilb.sampling import rand_unit_weight
from valhilb.shapes import cube, hexagon, random_integral_polygon, simplex, square

QT = get_field("ratfunc")
QQ = get_field("rational")


def descending_coords(field, rng, d):
    """x_1 >= ... >= x_d > 0 with strict random steps."""
    xs = [field.one()]
    for _ in range(d - 1):
        xs.append(xs[-1] * rand_unit_weight(field, rng))
    xs.reverse()
    # rand_unit_weight >= some positive value but may be < 1; re-sort exactly
    import functools

    xs.sort(key=functools.cmp_to_key(lambda a, b: a.compare(b)), reverse=True)
    return xs


def point_from_basis(field, basis, coords):
    d = len(basis)
    vec = [sum_elems(coords[j] * basis[j][i] for j in range(d)) for i in range(d)]
    return ProjPoint(field, vec)


class TestConstruction:
    def test_simplex_is_its_own_sandwich(self):
        P = simplex(QT, 2)
        for flag in P.maximal_flags:
            pair = build_sandwich(P, flag)
            cert = certify_sandwich(P, pair)
            assert all(cert.values()), cert
            # inner simplex of a simplex is the simplex itself: each basis
            # direction is (a lift of) a vertex of P
            verts = {ProjPoint(QT, P.homogeneous_vertex(i)) for i in range(3)}
            assert {ProjPoint(QT, v) for v in pair.inner} == verts
            assert {ProjPoint(QT, v) for v in pair.outer} == verts

    def test_square_all_flags(self):
        P = square(QT)
        for flag in P.maximal_flags:
            cert = certify_sandwich(P, build_sandwich(P, flag))
            assert all(cert.values()), (flag, cert)

    def test_hexagon_all_flags(self):
        P = hexagon(QT)
        assert len(P.maximal_flags) == 12
        for flag in P.maximal_flags:
            cert = certify_sandwich(P, build_sandwich(P, flag))
            assert all(cert.values()), (flag, cert)

    def test_cube_sample_flags(self):
        P = cube(QT)
        for flag in P.maximal_flags[::8]:
            cert = certify_sandwich(P, build_sandwich(P, flag))
            assert all(cert.values()), (flag, cert)

    def test_random_polygons(self):
        rng = Random(51)
        for _ in range(3):
            P = random_integral_polygon(QT, rng, rng.randint(3, 7))
            for flag in P.maximal_flags:
                cert = certify_sandwich(P, build_sandwich(P, flag))
                assert all(cert.values()), cert

    def test_chamber_chart_is_descending_cone(self):
        # points with descending positive inner coordinates fill the flag's
        # barycentric simplex: hit the barycenter targets at the steps
        P = hexagon(QT)
        flag = P.maximal_flags[0]
        e = inner_simplex(P, flag)
        faces = list(flag)
        field = QT
        one = field.one()
        for j in range(1, 4):
            coords = [one if k < j else field.zero() for k in range(3)]
            pt = point_from_basis(field, e, coords)
            target = P.barycenter_of(faces[j - 1].vertex_ids)
            assert pt == ProjPoint(field, list(target) + [one])


class TestBaseChangePredicates:
    def test_unit_rescaling_stays_in_O(self):
        P = square(QT)
        flag = P.maximal_flags[0]
        e = inner_simplex(P, flag)
        # rescale by rational units (|q| = 1): still in GL(d, O), and the
        # full-type partial sums change, so SD_equal degrades gracefully
        units = [Fraction(2), Fraction(-3, 5), Fraction(1)]
        e2 = [tuple(QT.from_fraction(u) * c for c in v) for u, v in zip(units, e)]
        report = check_base_change(QT, e, e2, range(1, 4))
        assert report.in_PD_of_O
        assert not report.nonnegative  # one unit is negative

    def test_large_entry_leaves_O(self):
        P = square(QT)
        flag = P.maximal_flags[0]
        e = inner_simplex(P, flag)
        t = QT.t()
        e2 = [tuple(t * c for c in e[0])] + [tuple(v) for v in e[1:]]
        report = check_base_change(QT, e, e2, range(1, 4))
        assert not report.in_PD_of_O

    def test_sandwich_pairs_satisfy_full_type(self):
        rng = Random(52)
        for _ in range(3):
            P = random_integral_polygon(QT, rng, rng.randint(3, 6))
            for flag in P.maximal_flags:
                pair = build_sandwich(P, flag)
                assert pair.report.in_PD_of_O
                assert pair.report.nonnegative

    def test_simplex_pair_is_identity(self):
        P = simplex(QT, 3)
        for flag in P.maximal_flags[:6]:
            pair = build_sandwich(P, flag)
            assert pair.report.SD_equal
            d = 4
            for i in range(d):
                for j in range(d):
                    expected = QT.one() if i == j else QT.zero()
                    assert pair.report.matrix[i][j] == expected


class TestBaseChangeLemmas:
    def test_log_maps_agree_on_shared_face(self):
        # inner bases of two flags agree on the barycentric face they share
        P = hexagon(QT)
        rng = Random(53)
        flags = P.maximal_flags
        for f1 in flags[:4]:
            for f2 in flags:
                if f1 is f2:
                    continue
                shared = f1.intersect(f2)
                D = shared.type_set(P.ambient_dim)
                if not D:
                    continue
                e1 = inner_simplex(P, f1)
                e2 = inner_simplex(P, f2)
                # both bases see the shared face as partial sums at its type
                report = check_base_change(QT, e1, e2, sorted(D))
                assert report.in_PD_of_O and report.SD_equal, (f1, f2, report)
                # sample points on the shared face: positive combinations of
                # the shared partial sums
                d = 3
                cuts = sorted(D) + [d]
                for _ in range(10):
                    weights = [rand_unit_weight(QT, rng) for _ in cuts]
                    vec = [QT.zero()] * d
                    for w, cut in zip(weights, cuts):
                        for i in range(d):
                            vec[i] = vec[i] + w * sum_elems(
                                e1[j][i] for j in range(cut)
                            )
                    p = ProjPoint(QT, vec)
                    assert modelflat.log_map(QT, e1, p) == modelflat.log_map(QT, e2, p)

    def test_nonnegative_base_change_on_whole_chart(self):
        # sandwich pair: log maps agree on the full descending cone
        rng = Random(54)
        P = random_integral_polygon(QT, rng, 5)
        for flag in P.maximal_flags[:6]:
            pair = build_sandwich(P, flag)
            for _ in range(10):
                xs = descending_coords(QT, rng, 3)
                p = point_from_basis(QT, pair.inner, xs)
                assert modelflat.log_map(QT, pair.inner, p) == modelflat.log_map(
                    QT, pair.outer, p
                )

    def test_flag_simplex_sandwich_distances(self):
        # the three Hilbert distances (domain, inner simplex, outer simplex)
        # coincide on pairs from the flag's barycentric simplex
        rng = Random(55)
        P = random_integral_polygon(QT, rng, 5)
        dom = HilbertDomain(P)
        for flag in P.maximal_flags[:4]:
            pair = build_sandwich(P, flag)
            from valhilb.convex import Polytope

            inner_poly = Polytope(QT, [ProjPoint(QT, v).affine() for v in pair.inner])
            outer_poly = Polytope(QT, [ProjPoint(QT, v).affine() for v in pair.outer])
            dom_in = HilbertDomain(inner_poly)
            dom_out = HilbertDomain(outer_poly)
            for _ in range(8):
                x = point_from_basis(QT, pair.inner, descending_coords(QT, rng, 3))
                y = point_from_basis(QT, pair.inner, descending_coords(QT, rng, 3))
                d0 = dom.distance(x, y)
                d1 = dom_in.distance(x, y)
                d2 = dom_out.distance(x, y)
                assert d0 == d1 == d2
                # and the model-flat evaluation agrees as well
                ax = modelflat.log_map(QT, pair.inner, x)
                ay = modelflat.log_map(QT, pair.inner, y)
                assert d0 == modelflat.dH(ax, ay)
