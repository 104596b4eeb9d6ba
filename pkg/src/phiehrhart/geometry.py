"""Polytopes, half-open simplices and cones, and their decompositions.

Everything is exact over ``Fraction``.  A polytope is triangulated by a
placing (beneath-beyond) triangulation in the given vertex order and the
pieces are made half-open by the usual generic-point rule: a facet of a
simplex is removed iff the reference point lies strictly beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor, lcm
from typing import Iterable, Sequence

from . import lattice
from .lattice import rank, nullspace, primitive


class DegenerateInput(ValueError):
    pass


def as_rational_point(p: Iterable) -> tuple:
    out = []
    for x in p:
        if isinstance(x, (list, tuple)):
            out.append(Fraction(int(x[0]), int(x[1])))
        else:
            out.append(Fraction(x))
    return tuple(out)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _denominator(points) -> int:
    q = 1
    for p in points:
        for x in p:
            q = lcm(q, x.denominator)
    return q


def _intrinsic_coords(points: Sequence[tuple]) -> tuple[list, int]:
    """Indices ``J`` of coordinates on which projection is injective on the
    affine hull of ``points``, and the intrinsic dimension."""
    if len(points) <= 1:
        return [], 0
    diffs = [_sub(p, points[0]) for p in points[1:]]
    k = rank(diffs)
    # greedy choice of coordinates keeping full rank
    J: list = []
    for j in range(len(points[0])):
        cand = J + [j]
        if rank([[d[i] for i in cand] for d in diffs]) == len(cand):
            J = cand
            if len(J) == k:
                break
    return J, k


def _hull_facets(ys: Sequence[tuple], k: int) -> list:
    """Facets of ``conv(ys)`` in R^k (``ys`` full-dimensional).

    Returns ``[(a, b, members)]`` with ``a . y <= b`` valid for every point
    and ``members`` the indices of points on the facet."""
    facets = {}
    n = len(ys)
    for subset in combinations(range(n), k):
        base = ys[subset[0]]
        rows = [_sub(ys[i], base) for i in subset[1:]]
        ns = nullspace(rows, ncols=k) if rows else nullspace([], ncols=k)
        if len(ns) != 1:
            continue
        a = tuple(Fraction(x) for x in ns[0])
        b = _dot(a, base)
        vals = [_dot(a, y) - b for y in ys]
        if all(v <= 0 for v in vals):
            pass
        elif all(v >= 0 for v in vals):
            a = tuple(-x for x in a)
            b = -b
            vals = [-v for v in vals]
        else:
            continue
        key = (a, b)
        if key not in facets:
            facets[key] = frozenset(i for i, v in enumerate(vals) if v == 0)
    return [(a, b, m) for (a, b), m in facets.items()]


class Polytope:
    """Convex hull of finitely many rational points.

    Redundant (non-extreme) and duplicate input points are dropped; the
    remaining vertices keep their input order.
    """

    def __init__(self, points: Iterable[Iterable]):
        pts = []
        for p in points:
            p = as_rational_point(p)
            if p not in pts:
                pts.append(p)
        if not pts:
            raise DegenerateInput("empty polytope")
        if len({len(p) for p in pts}) != 1:
            raise ValueError("points of different dimensions")
        self.dim_ambient = len(pts[0])
        J, k = _intrinsic_coords(pts)
        self.dim = k
        self._coords = J
        if k == 0:
            self.vertices = (pts[0],)
            self._facets = []
        else:
            ys = [tuple(p[j] for j in J) for p in pts]
            facets = _hull_facets(ys, k)
            keep = [
                i
                for i in range(len(pts))
                if rank([list(a) for a, _, m in facets if i in m]) == k
            ]
            self.vertices = tuple(pts[i] for i in keep)
            remap = {old: new for new, old in enumerate(keep)}
            self._facets = [
                (a, b, frozenset(remap[i] for i in m if i in remap)) for a, b, m in facets
            ]

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.dim_ambient

    @property
    def denominator(self) -> int:
        return _denominator(self.vertices)

    @property
    def is_lattice(self) -> bool:
        return self.denominator == 1

    def project(self, x: Sequence) -> tuple:
        return tuple(Fraction(x[j]) for j in self._coords)

    def in_affine_hull(self, x: Sequence) -> bool:
        if self.dim == self.dim_ambient:
            return True
        v0 = self.vertices[0]
        diffs = [_sub(v, v0) for v in self.vertices[1:]]
        d = _sub(as_rational_point(x), v0)
        return rank(diffs + [d]) == self.dim

    def facets(self) -> list:
        """``[(a, b, vertex indices)]`` in intrinsic (projected) coordinates."""
        return list(self._facets)

    def contains(self, x: Sequence, n: int = 1) -> bool:
        """Whether ``x`` lies in the dilate ``n P`` (closed)."""
        x = as_rational_point(x)
        if n == 0:
            return all(c == 0 for c in x)
        if not self.in_affine_hull(tuple(c / n for c in x)):
            return False
        if self.dim == 0:
            return tuple(c / n for c in x) == self.vertices[0]
        y = self.project(x)
        return all(_dot(a, y) <= n * b for a, b, _ in self._facets)

    def edges(self) -> list:
        """Pairs of vertex indices spanning an edge."""
        k = self.dim
        if k == 0:
            return []
        out = []
        for i, j in combinations(range(len(self.vertices)), 2):
            normals = [list(a) for a, _, m in self._facets if i in m and j in m]
            if rank(normals) == k - 1:
                out.append((i, j))
        return out

    def scaled(self, factor) -> Polytope:
        return Polytope([tuple(c * factor for c in v) for v in self.vertices])

    def translated(self, shift: Sequence) -> Polytope:
        s = as_rational_point(shift)
        return Polytope([tuple(a + b for a, b in zip(v, s)) for v in self.vertices])

    def bounding_box(self, n: int = 1) -> tuple[list, list]:
        lo = [floor(min(v[j] for v in self.vertices) * n) for j in range(self.dim_ambient)]
        hi = [ceil(max(v[j] for v in self.vertices) * n) for j in range(self.dim_ambient)]
        return lo, hi

    def __repr__(self):
        return f"Polytope({[tuple(str(c) for c in v) for v in self.vertices]})"

    def to_json(self) -> dict:
        return {"vertices": [_point_json(v) for v in self.vertices]}

    @classmethod
    def from_json(cls, data: dict) -> Polytope:
        return cls(data["vertices"])


def _point_json(v) -> list:
    return [int(c) if c.denominator == 1 else [c.numerator, c.denominator] for c in v]


@dataclass(frozen=True)
class HalfOpenSimplex:
    """``conv(v_1..v_{k+1})`` with facet ``i`` (opposite ``v_i``) removed
    when ``removed[i]``, i.e. barycentric coordinate ``i`` must be > 0."""

    vertices: tuple
    removed: tuple

    def __init__(self, vertices, removed=None):
        verts = tuple(as_rational_point(v) for v in vertices)
        if not verts:
            raise DegenerateInput("simplex without vertices")
        flags = tuple(bool(r) for r in removed) if removed is not None else (False,) * len(verts)
        if len(flags) != len(verts):
            raise ValueError("one removed flag per vertex (facet) required")
        diffs = [_sub(v, verts[0]) for v in verts[1:]]
        if diffs and rank(diffs) != len(diffs):
            raise DegenerateInput("simplex vertices are affinely dependent")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "removed", flags)

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def dim_ambient(self) -> int:
        return len(self.vertices[0])

    @property
    def is_lattice(self) -> bool:
        return _denominator(self.vertices) == 1

    @property
    def denominator(self) -> int:
        return _denominator(self.vertices)

    def complement(self) -> HalfOpenSimplex:
        return HalfOpenSimplex(self.vertices, tuple(not r for r in self.removed))

    def cone_coordinates(self, x: Sequence, n=1) -> list | None:
        """Coefficients ``mu`` with ``(x, n) = sum mu_i (v_i, 1)``."""
        M = [[v[j] for v in self.vertices] for j in range(self.dim_ambient)]
        M.append([1] * len(self.vertices))
        return lattice.solve_rational(M, list(as_rational_point(x)) + [Fraction(n)])

    def barycentric(self, x: Sequence) -> list | None:
        return self.cone_coordinates(x, 1)

    def contains(self, x: Sequence, n: int = 1) -> bool:
        """Membership of ``x`` in the dilate ``n * self`` (half-open)."""
        mu = self.cone_coordinates(x, n)
        if mu is None:
            return False
        return all((m > 0) if r else (m >= 0) for m, r in zip(mu, self.removed))

    def centroid(self) -> tuple:
        k = len(self.vertices)
        return tuple(sum(v[j] for v in self.vertices) / k for j in range(self.dim_ambient))

    def to_json(self) -> dict:
        return {"vertices": [_point_json(v) for v in self.vertices], "removed_facets": list(self.removed)}

    @classmethod
    def from_json(cls, data: dict) -> HalfOpenSimplex:
        return cls(data["vertices"], data.get("removed_facets"))


def complement(simplex: HalfOpenSimplex) -> HalfOpenSimplex:
    return simplex.complement()


def contains(simplex: HalfOpenSimplex, x: Sequence) -> bool:
    return simplex.contains(x)


@dataclass(frozen=True)
class HalfOpenCone:
    """``apex + {sum lam_i u_i : lam_i > 0 if open_flags[i] else lam_i >= 0}``
    with linearly independent integer generators ``u_i``."""

    apex: tuple
    generators: tuple
    open_flags: tuple

    def __init__(self, apex, generators, open_flags=None):
        gens = tuple(tuple(int(x) for x in u) for u in generators)
        flags = tuple(bool(f) for f in open_flags) if open_flags is not None else (False,) * len(gens)
        object.__setattr__(self, "apex", as_rational_point(apex))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "open_flags", flags)
        if gens and rank(gens) != len(gens):
            raise DegenerateInput("cone generators are linearly dependent")

    @property
    def dim_ambient(self) -> int:
        return len(self.apex)

    def coordinates(self, x: Sequence) -> list | None:
        if not self.generators:
            return [] if tuple(as_rational_point(x)) == self.apex else None
        U = lattice.columns_to_matrix(self.generators)
        return lattice.solve_rational(U, list(_sub(as_rational_point(x), self.apex)))

    def contains(self, x: Sequence) -> bool:
        lam = self.coordinates(x)
        if lam is None:
            return False
        return all((l > 0) if f else (l >= 0) for l, f in zip(lam, self.open_flags))


@dataclass(frozen=True)
class VertexCone:
    """Tangent cone of a polytope at ``apex``, spanned by primitive edge
    directions."""

    apex: tuple
    generators: tuple


# -- placing triangulation ---------------------------------------------------


def _facet_normal(rays: Sequence[tuple], facet: Sequence[int], opposite: int) -> tuple:
    ns = nullspace([list(rays[i]) for i in facet], ncols=len(rays[0]))
    if len(ns) != 1:
        raise DegenerateInput("facet rays are dependent")
    n = tuple(Fraction(x) for x in ns[0])
    if _dot(n, rays[opposite]) < 0:
        n = tuple(-x for x in n)
    return n


def place_rays(rays: Sequence[tuple]) -> list:
    """Placing triangulation of the pointed cone spanned by ``rays``.

    ``rays`` must span the whole space.  Returns simplicial cones as tuples
    of ray indices; the first one is spanned by the first linearly
    independent rays in input order.
    """
    m = len(rays[0])
    first: list = []
    for i, r in enumerate(rays):
        if rank([list(rays[j]) for j in first] + [list(r)]) == len(first) + 1:
            first.append(i)
            if len(first) == m:
                break
    if len(first) < m:
        raise DegenerateInput("rays do not span the ambient space")
    simplices = [tuple(first)]
    boundary = {}
    for f in first:
        facet = frozenset(j for j in first if j != f)
        boundary[facet] = _facet_normal(rays, sorted(facet), f)
    for i, r in enumerate(rays):
        if i in first:
            continue
        visible = [F for F, n in boundary.items() if _dot(n, r) < 0]
        for F in visible:
            simplices.append(tuple(sorted(F)) + (i,))
        for F in visible:
            del boundary[F]
        for F in visible:
            for f in F:
                G = (F - {f}) | {i}
                if G in boundary:
                    del boundary[G]
                else:
                    boundary[G] = _facet_normal(rays, sorted(G), f)
    return simplices


_PRIMES = [10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079, 10091, 10093, 10099, 10103]


def _reference_weights(m: int, attempt: int) -> list:
    ps = _PRIMES[attempt % len(_PRIMES):] + _PRIMES[: attempt % len(_PRIMES)]
    scale = Fraction(1, 2 ** (attempt // len(_PRIMES)))
    return [1 + scale * Fraction(1, ps[i % len(ps)]) * (i + 1) for i in range(m)]


def _half_open_flags(rays: Sequence[tuple], simplices: Sequence[tuple]) -> list:
    """Removed/open flags for each simplicial cone by the generic-point rule."""
    m = len(rays[0])
    for attempt in range(64):
        w = _reference_weights(m, attempt)
        ref = [sum(wi * rays[j][k] for wi, j in zip(w, simplices[0])) for k in range(m)]
        flags = []
        generic = True
        for s in simplices:
            M = lattice.columns_to_matrix([rays[j] for j in s])
            mu = lattice.solve_rational(M, ref)
            if any(x == 0 for x in mu):
                generic = False
                break
            flags.append(tuple(x < 0 for x in mu))
        if generic:
            return flags
    raise DegenerateInput("no generic reference point found")


def half_open_decomposition(P: Polytope) -> list:
    """Disjoint half-open simplices whose union is ``P``.

    Works in the affine hull of ``P``; the pieces have dimension ``P.dim``.
    """
    if P.dim == 0:
        return [HalfOpenSimplex(P.vertices)]
    ys = [P.project(v) for v in P.vertices]
    rays = [tuple(y) + (Fraction(1),) for y in ys]
    simplices = place_rays(rays)
    flags = _half_open_flags(rays, simplices)
    return [
        HalfOpenSimplex([P.vertices[j] for j in s], f) for s, f in zip(simplices, flags)
    ]


def vertex_cones(P: Polytope) -> list:
    if not P.is_full_dimensional:
        raise DegenerateInput("vertex cones need a full-dimensional polytope")
    nbrs = {i: [] for i in range(len(P.vertices))}
    for i, j in P.edges():
        nbrs[i].append(j)
        nbrs[j].append(i)
    cones = []
    for i, v in enumerate(P.vertices):
        gens = tuple(tuple(primitive(_sub(P.vertices[j], v))) for j in nbrs[i])
        cones.append(VertexCone(v, gens))
    return cones


def cone_simplicial_split(K: VertexCone) -> list:
    """Half-open simplicial cones partitioning the pointed cone ``K``."""
    gens = [tuple(Fraction(x) for x in g) for g in K.generators]
    if not gens:
        return [HalfOpenCone(K.apex, ())]
    if rank(gens) == len(gens):
        return [HalfOpenCone(K.apex, K.generators)]
    if rank(gens) < len(gens[0]):
        # lower-dimensional cone: triangulate inside its linear span
        J = []
        for j in range(len(gens[0])):
            if rank([[g[i] for i in J + [j]] for g in gens]) == len(J) + 1:
                J.append(j)
        proj = [tuple(g[j] for j in J) for g in gens]
    else:
        proj = gens
    if not _is_pointed(proj):
        raise DegenerateInput("cone is not pointed")
    simplices = place_rays(proj)
    flags = _half_open_flags(proj, simplices)
    return [
        HalfOpenCone(K.apex, [K.generators[j] for j in s], f) for s, f in zip(simplices, flags)
    ]


def _is_pointed(gens: Sequence[tuple]) -> bool:
    """No nontrivial nonnegative combination of the generators is zero.

    Checked through the facets of ``conv(0, gens)``: the origin must be a
    vertex of that hull, which fails exactly when the cone contains a line
    (for full-dimensional generator sets)."""
    pts = [tuple(Fraction(0) for _ in gens[0])] + [tuple(g) for g in gens]
    P = Polytope(pts)
    return P.vertices[0] == pts[0] and P.dim == len(gens[0])


def validate_decomposition(pieces: Sequence[HalfOpenSimplex], polytope: Polytope | None = None,
                           max_dilation: int = 4) -> bool:
    """Check on dilates ``n <= max_dilation`` that the pieces are pairwise
    disjoint on lattice points and, if ``polytope`` is given, that they
    cover exactly its lattice points."""
    if not pieces:
        return False
    d = pieces[0].dim_ambient
    for n in range(max_dilation + 1):
        verts = [v for s in pieces for v in s.vertices]
        if polytope is not None:
            verts += list(polytope.vertices)
        lo = [floor(min(v[j] for v in verts) * n) for j in range(d)]
        hi = [ceil(max(v[j] for v in verts) * n) for j in range(d)]
        for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            hits = sum(1 for s in pieces if s.contains(x, n))
            if hits > 1:
                return False
            if polytope is not None and hits != int(polytope.contains(x, n)):
                return False
    return True
