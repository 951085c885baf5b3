"""Polytopes over ordered fields: faces, flags, subdivisions, chords.

A polytope is stored as a vertex list in one fixed affine chart (the
standard chart: last homogeneous coordinate 1); all barycenters and
subdivisions are taken relative to that chart.  Faces are enumerated by
brute force with exact supporting-hyperplane certificates, which is why
the ambient affine dimension is capped at 3 -- desk scale, no general
exact convex hull machinery.

The face lattice is built once and cached; afterwards the polytope is
immutable and safe for concurrent readers.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

from .errors import DegenerateInput, DimensionMismatch, LineAtInfinity
from .linalg import kernel_vector, rank, sum_elems
from .projective import DualPoint, ProjLine, ProjPoint, affine_point

MAX_AFFINE_DIM = 3


class Face:
    """A face of the polytope: vertex subset, dimension, and (for proper
    faces) a supporting affine functional that vanishes on it and is
    nonnegative on the polytope."""

    __slots__ = ("index", "vertex_ids", "dim", "functional")

    def __init__(self, index, vertex_ids, dim, functional):
        self.index = index
        self.vertex_ids = frozenset(vertex_ids)
        self.dim = dim
        self.functional = functional  # (gradient tuple, constant) or None for P

    def __repr__(self):
        ids = ",".join(str(i) for i in sorted(self.vertex_ids))
        return f"Face#{self.index}(dim={self.dim}; verts={{{ids}}})"

    def __eq__(self, other):
        return isinstance(other, Face) and self.vertex_ids == other.vertex_ids

    def __hash__(self):
        return hash(self.vertex_ids)

    def contains_face(self, other: "Face") -> bool:
        return other.vertex_ids <= self.vertex_ids


class Flag:
    """An increasing sequence of faces."""

    __slots__ = ("faces",)

    def __init__(self, faces):
        self.faces = tuple(faces)

    @property
    def top(self) -> Face:
        return self.faces[-1]

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def __eq__(self, other):
        return isinstance(other, Flag) and self.faces == other.faces

    def __hash__(self):
        return hash(self.faces)

    def __repr__(self):
        return "Flag(" + " < ".join(f"#{f.index}" for f in self.faces) + ")"

    def key(self):
        return tuple(f.index for f in self.faces)

    def intersect(self, other: "Flag") -> "Flag":
        common = [f for f in self.faces if f in set(other.faces)]
        return Flag(common)

    def type_set(self, ambient_dim: int) -> frozenset:
        """D(F): the set dim(face)+1 over faces other than the polytope."""
        return frozenset(f.dim + 1 for f in self.faces if f.dim < ambient_dim)


class BarycentricSimplex:
    """The simplex of the barycentric subdivision attached to a flag."""

    __slots__ = ("flag", "vertices")

    def __init__(self, flag: Flag, vertices):
        self.flag = flag
        self.vertices = tuple(tuple(v) for v in vertices)

    def __repr__(self):
        return f"BarycentricSimplex({self.flag!r})"


class Polytope:
    """A full-dimensional bounded polytope given by its vertices."""

    def __init__(self, field, vertices):
        self.field = field
        self.vertices = [tuple(v) for v in vertices]
        if not self.vertices:
            raise DegenerateInput("a polytope needs vertices")
        self.ambient_dim = len(self.vertices[0])
        if self.ambient_dim > MAX_AFFINE_DIM:
            raise DimensionMismatch(
                f"ambient affine dimension {self.ambient_dim} exceeds the "
                f"supported desk scale {MAX_AFFINE_DIM}"
            )
        if any(len(v) != self.ambient_dim for v in self.vertices):
            raise DimensionMismatch("inconsistent vertex dimensions")
        self._faces = None
        self._facets = None
        self._flags = None
        self._flags_star = None
        self._maximal_flags = None

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_json(cls, field, text: str) -> "Polytope":
        data = json.loads(text) if isinstance(text, str) else text
        if data.get("field") and data["field"] != field.name:
            raise DegenerateInput(
                f"polytope file declares field {data['field']!r}, got {field.name!r}"
            )
        verts = [
            tuple(field.parse(lit) for lit in row) for row in data["vertices"]
        ]
        p = cls(field, verts)
        if "dim" in data and data["dim"] != p.ambient_dim:
            raise DimensionMismatch("declared dim does not match vertex length")
        return p

    def to_json(self) -> str:
        return json.dumps(
            {
                "field": self.field.name,
                "dim": self.ambient_dim,
                "vertices": [[str(c) for c in v] for v in self.vertices],
                "subfield": "Q",
            }
        )

    # -- basic geometry --------------------------------------------------

    def homogeneous_vertex(self, i: int):
        return self.vertices[i] + (self.field.one(),)

    def is_integral(self) -> bool:
        """All vertex coordinates in the rational subfield Q (inside the
        valuation ring for the non-Archimedean backends)."""
        for v in self.vertices:
            for c in v:
                if getattr(c, "as_fraction", None) is None:
                    return False
                if c.as_fraction() is None:
                    return False
        return True

    def barycenter_of(self, vertex_ids):
        ids = sorted(vertex_ids)
        k = self.field.from_fraction(Fraction(1, len(ids)))
        return tuple(
            sum_elems(self.vertices[i][j] for i in ids) * k
            for j in range(self.ambient_dim)
        )

    @property
    def barycenter(self):
        return self.barycenter_of(range(len(self.vertices)))

    def barycenter_point(self, face: Face) -> ProjPoint:
        return affine_point(self.field, self.barycenter_of(face.vertex_ids))

    # -- face lattice ------------------------------------------------------

    def _affine_rank(self, ids) -> int:
        ids = sorted(ids)
        if len(ids) <= 1:
            return 0
        base = self.vertices[ids[0]]
        rows = [
            [self.vertices[i][j] - base[j] for j in range(self.ambient_dim)]
            for i in ids[1:]
        ]
        return rank(self.field, rows)

    def _build_faces(self):
        n = self.ambient_dim
        m = len(self.vertices)
        if self._affine_rank(range(m)) != n:
            raise DegenerateInput("vertices are not full-dimensional")

        facets = {}
        for sub in combinations(range(m), n):
            if n > 1 and self._affine_rank(sub) != n - 1:
                continue
            base = self.vertices[sub[0]]
            rows = [
                [self.vertices[i][j] - base[j] for j in range(n)] for i in sub[1:]
            ]
            g = kernel_vector(self.field, rows, n)
            if g is None:
                continue
            c = -sum_elems(g[j] * base[j] for j in range(n))
            signs = []
            for v in self.vertices:
                val = sum_elems(g[j] * v[j] for j in range(n)) + c
                signs.append(val.sign())
            if any(s > 0 for s in signs) and any(s < 0 for s in signs):
                continue  # the hyperplane cuts through, not supporting
            if all(s <= 0 for s in signs):
                g = [-x for x in g]
                c = -c
                signs = [-s for s in signs]
            on = frozenset(i for i, s in enumerate(signs) if s == 0)
            if on not in facets:
                facets[on] = (tuple(g), c)

        # closure of the facet family under intersections = all proper faces
        closed = set(facets)
        frontier = list(facets)
        while frontier:
            nxt = []
            for a in frontier:
                for b in facets:
                    c = a & b
                    if c and c not in closed:
                        closed.add(c)
                        nxt.append(c)
            frontier = nxt

        for i in range(m):
            if frozenset((i,)) not in closed:
                raise DegenerateInput(
                    f"vertex {i} is not extreme (it is no 0-dimensional face)"
                )

        def support(ids):
            if ids in facets:
                return facets[ids]
            grad = [self.field.zero()] * n
            const = self.field.zero()
            for fids, (g, c) in facets.items():
                if ids <= fids:
                    grad = [a + b for a, b in zip(grad, g)]
                    const = const + c
            return (tuple(grad), const)

        proper = sorted(closed, key=lambda s: (self._affine_rank(s), len(s), tuple(sorted(s))))
        faces = []
        for ids in proper:
            faces.append(Face(len(faces), ids, self._affine_rank(ids), support(ids)))
        faces.append(Face(len(faces), frozenset(range(m)), n, None))
        self._faces = faces
        self._facets = [f for f in faces if f.dim == n - 1]

    @property
    def faces(self):
        if self._faces is None:
            self._build_faces()
        return self._faces

    @property
    def facets(self):
        if self._facets is None:
            self._build_faces()
        return self._facets

    @property
    def top_face(self) -> Face:
        return self.faces[-1]

    def facet_dual_points(self):
        """Facet functionals as projective hyperplanes in P((F^d)*)."""
        out = []
        for f in self.facets:
            g, c = f.functional
            out.append(DualPoint(self.field, tuple(g) + (c,)))
        return out

    # -- flags -------------------------------------------------------------

    def _build_flags(self):
        faces = self.faces
        contains = {
            f.index: [g.index for g in faces if g is not f and f.contains_face(g)]
            for f in faces
        }
        chains = []

        def grow(chain):
            chains.append(tuple(chain))
            last = chain[0]
            for idx in contains[last]:
                grow([idx] + chain)

        for f in faces:
            grow([f.index])
        self._flags = [Flag([faces[i] for i in ch]) for ch in sorted(chains)]
        top = self.top_face
        self._flags_star = [fl for fl in self._flags if fl.top is top]
        d = self.ambient_dim + 1
        self._maximal_flags = sorted(
            (fl for fl in self._flags_star if len(fl) == d), key=Flag.key
        )

    @property
    def flags(self):
        if self._flags is None:
            self._build_flags()
        return self._flags

    @property
    def flags_star(self):
        if self._flags_star is None:
            self._build_flags()
        return self._flags_star

    @property
    def maximal_flags(self):
        if self._maximal_flags is None:
            self._build_flags()
        return self._maximal_flags

    # -- barycentric subdivision --------------------------------------------

    def barycentric_simplex(self, flag: Flag) -> BarycentricSimplex:
        return BarycentricSimplex(
            flag, [self.barycenter_of(f.vertex_ids) for f in flag]
        )

    def barycentric_subdivision(self):
        """The maximal simplices of the barycentric subdivision, one per
        maximal flag through the polytope."""
        return [self.barycentric_simplex(fl) for fl in self.maximal_flags]

    # -- membership and chords ------------------------------------------------

    def _affine_coords(self, point) -> tuple:
        if isinstance(point, ProjPoint):
            return point.affine()
        return tuple(point)

    def contains(self, point, strict: bool = False) -> bool:
        x = self._affine_coords(point)
        for f in self.facets:
            g, c = f.functional
            val = sum_elems(g[j] * x[j] for j in range(self.ambient_dim)) + c
            s = val.sign()
            if s < 0 or (strict and s == 0):
                return False
        return True

    def chord_parameters(self, base, direction):
        """The parameter interval of {base + s * direction} inside the
        open polytope, or None when the line misses the interior."""
        lo = hi = None
        n = self.ambient_dim
        for f in self.facets:
            g, c = f.functional
            r0 = sum_elems(g[j] * base[j] for j in range(n)) + c
            slope = sum_elems(g[j] * direction[j] for j in range(n))
            ssign = slope.sign()
            if ssign == 0:
                if r0.sign() <= 0:
                    return None  # line parallel to and outside/on the facet
                continue
            s = -(r0 / slope)
            if ssign > 0:
                if lo is None or s.compare(lo) > 0:
                    lo = s
            else:
                if hi is None or s.compare(hi) < 0:
                    hi = s
        if lo is None or hi is None:
            raise DegenerateInput("unbounded chord in a bounded polytope")
        if lo.compare(hi) >= 0:
            return None
        return lo, hi

    def segment_intersection(self, line: ProjLine):
        """Endpoints of the open chord cut by a projective line, or None.

        The endpoints come back as a positively oriented pair along the
        line's own parametrization.
        """
        field = self.field
        finite = []
        for p in (line.p, line.q):
            if not p.coords[-1].is_zero():
                finite.append(p.affine())
            else:
                finite.append(None)
        if finite[0] is None and finite[1] is None:
            raise LineAtInfinity("the line does not meet the affine chart")
        if finite[0] is not None and finite[1] is not None:
            base = finite[0]
            direction = tuple(b - a for a, b in zip(finite[0], finite[1]))
        else:
            idx = 0 if finite[0] is not None else 1
            base = finite[idx]
            at_inf = (line.p, line.q)[1 - idx]
            direction = at_inf.coords[:-1]
        params = self.chord_parameters(base, direction)
        if params is None:
            return None
        lo, hi = params
        a = affine_point(field, tuple(b + lo * w for b, w in zip(base, direction)))
        b = affine_point(field, tuple(u + hi * w for u, w in zip(base, direction)))
        return a, b
