"""Multivariate integer point transforms as rational functions over ``R[G]``.

A transform is a Laurent polynomial numerator over a multiset of factors
``(1 - g z^u)``.  Factors are kept in sign-canonical form (first nonzero
entry of ``u`` positive) so that summands coming from different cones can
be brought to a common denominator; ``R[G][z]`` is not a UFD, so equality is
only ever decided by clearing denominators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import lattice
from .geometry import (
    DegenerateInput,
    HalfOpenCone,
    HalfOpenSimplex,
    Polytope,
    cone_simplicial_split,
    half_open_decomposition,
    vertex_cones,
)
from .groups import AbelianGroup, LatticeHomomorphism, group_product
from .lattice import HalfOpenParallelepiped, parallelepiped_points
from .rings import ZZ, CoefficientRing, GroupRingElement, RingMismatch
from .series import GroupRingPolynomial, RationalGroupSeries, ehrhart_series


class SpecializationError(ValueError):
    """Setting variables to 1 would make a denominator factor constant."""


class GroupLaurentPolynomial:
    """Finite sum of ``c * g * z^alpha``, stored as ``{(alpha, g): c}``."""

    __slots__ = ("ring", "group", "nvars", "_terms")

    def __init__(self, ring: CoefficientRing, group: AbelianGroup, nvars: int, terms=()):
        self.ring = ring
        self.group = group
        self.nvars = nvars
        acc: dict = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for (alpha, g), c in items:
            key = (tuple(alpha), group.element(g))
            acc[key] = acc.get(key, 0) + c
        red = ring.reduce
        self._terms = {k: c for k, c in ((k, red(c)) for k, c in acc.items()) if c}

    @classmethod
    def _raw(cls, ring, group, nvars, terms):
        obj = cls.__new__(cls)
        obj.ring, obj.group, obj.nvars, obj._terms = ring, group, nvars, terms
        return obj

    @classmethod
    def zero(cls, ring, group, nvars) -> GroupLaurentPolynomial:
        return cls._raw(ring, group, nvars, {})

    @classmethod
    def monomial(cls, ring, group, alpha, g=None, c: int = 1) -> GroupLaurentPolynomial:
        g = group.identity if g is None else g
        return cls(ring, group, len(alpha), [((alpha, g), c)])

    @classmethod
    def one(cls, ring, group, nvars) -> GroupLaurentPolynomial:
        return cls.monomial(ring, group, (0,) * nvars)

    @classmethod
    def from_terms(cls, ring, group, nvars, terms: dict) -> GroupLaurentPolynomial:
        """From ``{alpha: GroupRingElement}``."""
        return cls(ring, group, nvars, [((a, g), c) for a, x in terms.items() for g, c in x.items()])

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        """``{alpha: GroupRingElement}``."""
        out: dict = {}
        for (alpha, g), c in self._terms.items():
            out.setdefault(alpha, []).append((g, c))
        return {a: GroupRingElement(self.ring, self.group, ts) for a, ts in out.items()}

    def coefficient(self, alpha) -> GroupRingElement:
        alpha = tuple(alpha)
        return GroupRingElement(
            self.ring, self.group, [(g, c) for (a, g), c in self._terms.items() if a == alpha]
        )

    def raw_items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: GroupLaurentPolynomial):
        if self.ring != other.ring:
            raise RingMismatch(f"ring mismatch: {self.ring} vs {other.ring}")
        self.group.check(other.group)
        if self.nvars != other.nvars:
            raise ValueError(f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other: GroupLaurentPolynomial) -> GroupLaurentPolynomial:
        self._check(other)
        red = self.ring.reduce
        terms = dict(self._terms)
        for k, c in other._terms.items():
            s = red(terms.get(k, 0) + c)
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return self._raw(self.ring, self.group, self.nvars, terms)

    def __neg__(self):
        red = self.ring.reduce
        return self._raw(self.ring, self.group, self.nvars, {k: red(-c) for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, n: int) -> GroupLaurentPolynomial:
        red = self.ring.reduce
        terms = {k: c for k, c in ((k, red(c * n)) for k, c in self._terms.items()) if c}
        return self._raw(self.ring, self.group, self.nvars, terms)

    def __mul__(self, other) -> GroupLaurentPolynomial:
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        mul, red = self.group.mul, self.ring.reduce
        acc: dict = {}
        for (a1, g1), c1 in self._terms.items():
            for (a2, g2), c2 in other._terms.items():
                k = (tuple(x + y for x, y in zip(a1, a2)), mul(g1, g2))
                acc[k] = acc.get(k, 0) + c1 * c2
        terms = {k: c for k, c in ((k, red(c)) for k, c in acc.items()) if c}
        return self._raw(self.ring, self.group, self.nvars, terms)

    def times_monomial(self, alpha, g, c: int = 1) -> GroupLaurentPolynomial:
        mul, red = self.group.mul, self.ring.reduce
        terms = {}
        for (a, h), d in self._terms.items():
            v = red(d * c)
            if v:
                terms[(tuple(x + y for x, y in zip(a, alpha)), mul(h, g))] = v
        return self._raw(self.ring, self.group, self.nvars, terms)

    def times_factor(self, g, u, power: int = 1) -> GroupLaurentPolynomial:
        """Multiply by ``(1 - g z^u)^power``."""
        out = self
        for _ in range(power):
            out = out - out.times_monomial(u, g)
        return out

    def euler(self, j: int) -> GroupLaurentPolynomial:
        """``z_j d/dz_j``."""
        red = self.ring.reduce
        terms = {k: c for k, c in ((k, red(c * k[0][j])) for k, c in self._terms.items()) if c}
        return self._raw(self.ring, self.group, self.nvars, terms)

    def specialize(self, coords: Iterable[int]) -> GroupLaurentPolynomial:
        """Set ``z_j = 1`` for ``j in coords``; those variables disappear."""
        drop = set(coords)
        keep = [j for j in range(self.nvars) if j not in drop]
        acc: dict = {}
        for (a, g), c in self._terms.items():
            k = (tuple(a[j] for j in keep), g)
            acc[k] = acc.get(k, 0) + c
        return GroupLaurentPolynomial(self.ring, self.group, len(keep), acc)

    def __eq__(self, other):
        if not isinstance(other, GroupLaurentPolynomial):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.group == other.group
            and self.nvars == other.nvars
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.ring, self.group, self.nvars, frozenset(self._terms.items())))

    def __repr__(self):
        return f"GroupLaurentPolynomial({sorted(self._terms.items())})"

    def to_json(self) -> list:
        return [{"exponent": list(a), "coeff": x.to_json()} for a, x in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data: list, ring, group, nvars: int) -> GroupLaurentPolynomial:
        terms = {tuple(t["exponent"]): GroupRingElement.from_json(t["coeff"], ring, group) for t in data}
        return cls.from_terms(ring, group, nvars, terms)


def _is_canonical(u) -> bool:
    for x in u:
        if x:
            return x > 0
    raise ValueError("zero exponent vector in a denominator factor")


def canonicalize_factor(ring: CoefficientRing, group: AbelianGroup, g, u):
    """Sign-canonical form of ``(1 - g z^u)``.

    Returns ``((g', u'), unit)`` with ``1 - g z^u == unit * (1 - g' z^u')``
    and ``unit`` a signed monomial (``1`` when ``u`` is already canonical).
    Otherwise ``g' = g^-1``, ``u' = -u`` and ``unit = -g z^u``.
    """
    u = tuple(int(x) for x in u)
    g = group.element(g)
    if _is_canonical(u):
        return (g, u), GroupLaurentPolynomial.one(ring, group, len(u))
    return (group.inv(g), tuple(-x for x in u)), GroupLaurentPolynomial.monomial(ring, group, u, g, -1)


@dataclass(frozen=True, order=True)
class DenominatorFactorZ:
    """``(1 - g z^u)`` raised to ``multiplicity``; ``u`` sign-canonical."""

    u: tuple
    g: tuple
    multiplicity: int = 1


def _max_union(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, m in b.items():
        out[k] = max(out.get(k, 0), m)
    return out


class MultivariateRationalFunction:
    """``numerator / prod (1 - g z^u)^m`` with canonical factors ``{(g, u): m}``.

    Non-canonical factors given to the constructor are rewritten and the
    inverse of their unit is folded into the numerator.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: GroupLaurentPolynomial, denominator: dict | Iterable = ()):
        R, G = numerator.ring, numerator.group
        den: dict = {}
        items = denominator.items() if isinstance(denominator, dict) else denominator
        for (g, u), m in items:
            if m <= 0:
                continue
            if len(u) != numerator.nvars:
                raise ValueError("factor exponent has the wrong number of variables")
            (g2, u2), _unit = canonicalize_factor(R, G, g, u)
            if u2 != tuple(u):
                # 1/(unit f') = unit^-1 / f' with unit^-1 = -g^-1 z^-u
                for _ in range(m):
                    numerator = numerator.times_monomial(u2, G.inv(g), -1)
            den[(g2, u2)] = den.get((g2, u2), 0) + m
        self.numerator = numerator
        self.denominator = den

    @property
    def ring(self):
        return self.numerator.ring

    @property
    def group(self):
        return self.numerator.group

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    def factors(self) -> list:
        return sorted(DenominatorFactorZ(u, g, m) for (g, u), m in self.denominator.items())

    def over(self, denominator: dict) -> GroupLaurentPolynomial:
        num = self.numerator
        for (g, u), m in sorted(denominator.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            extra = m - self.denominator.get((g, u), 0)
            if extra < 0:
                raise ValueError("target denominator does not contain this one")
            if extra:
                num = num.times_factor(g, u, extra)
        return num

    def __add__(self, other):
        return sum_rational([self, other])

    def __neg__(self):
        return MultivariateRationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-other)

    def times_monomial(self, alpha, g, c: int = 1) -> MultivariateRationalFunction:
        return MultivariateRationalFunction(self.numerator.times_monomial(alpha, g, c), self.denominator)

    def equals(self, other: MultivariateRationalFunction) -> bool:
        self.numerator._check(other.numerator)
        den = _max_union(self.denominator, other.denominator)
        return self.over(den) == other.over(den)

    def __eq__(self, other):
        if not isinstance(other, MultivariateRationalFunction):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __repr__(self):
        return f"MultivariateRationalFunction({self.numerator!r}, {self.factors()})"

    def to_json(self) -> dict:
        return {
            "numerator": self.numerator.to_json(),
            "denominator": [
                {"g": list(f.g), "u": list(f.u), "multiplicity": f.multiplicity} for f in self.factors()
            ],
        }

    @classmethod
    def from_json(cls, data: dict, ring, group, nvars: int) -> MultivariateRationalFunction:
        num = GroupLaurentPolynomial.from_json(data["numerator"], ring, group, nvars)
        den = [((tuple(f["g"]), tuple(f["u"])), int(f.get("multiplicity", 1))) for f in data["denominator"]]
        return cls(num, den)

    # -- calculus -----------------------------------------------------------

    def euler(self, j: int) -> MultivariateRationalFunction:
        """``z_j d/dz_j`` by the quotient rule.

        Only factors whose exponent involves ``z_j`` gain a multiplicity."""
        N = self.numerator
        hit = [(g, u, m) for (g, u), m in sorted(self.denominator.items(), key=lambda kv: (kv[0][1], kv[0][0])) if u[j]]
        if not hit:
            return MultivariateRationalFunction(N.euler(j), self.denominator)
        all_f = N.euler(j)
        for g, u, _ in hit:
            all_f = all_f.times_factor(g, u)
        total = all_f
        for i, (g, u, m) in enumerate(hit):
            # -N m (theta f_i) prod_{k != i} f_k, with theta f_i = -u_j g z^u
            term = N.times_monomial(u, g, m * u[j])
            for k, (g2, u2, _) in enumerate(hit):
                if k != i:
                    term = term.times_factor(g2, u2)
            total = total + term
        den = dict(self.denominator)
        for g, u, _ in hit:
            den[(g, u)] += 1
        return MultivariateRationalFunction(total, den)

    def derivative(self, j: int) -> MultivariateRationalFunction:
        """Formal ``d/dz_j``, i.e. ``z_j^-1`` times the Euler operator."""
        e = tuple(-int(i == j) for i in range(self.nvars))
        F = self.euler(j)
        return MultivariateRationalFunction(F.numerator.times_monomial(e, self.group.identity), F.denominator)

    def specialize_one(self, coords: Iterable[int]):
        return specialize_one(self, coords)

    def to_series(self) -> RationalGroupSeries:
        """View a one-variable function with polynomial numerator as a
        ``RationalGroupSeries`` in ``t``."""
        if self.nvars != 1:
            raise ValueError("only one-variable functions are series in t")
        R, G = self.ring, self.group
        coeffs: dict = {}
        for (a, g), c in self.numerator.raw_items():
            if a[0] < 0:
                raise ValueError("numerator has negative powers of t")
            coeffs.setdefault(a[0], []).append((g, c))
        top = max(coeffs, default=-1)
        num = GroupRingPolynomial(R, G, [GroupRingElement(R, G, coeffs.get(n, ())) for n in range(top + 1)])
        return RationalGroupSeries(num, {(g, u[0]): m for (g, u), m in self.denominator.items()})


def from_series(S: RationalGroupSeries) -> MultivariateRationalFunction:
    terms = [(((n,), g), c) for n, x in enumerate(S.numerator.coeffs) for g, c in x.items()]
    num = GroupLaurentPolynomial(S.ring, S.group, 1, terms)
    return MultivariateRationalFunction(num, {(g, (p,)): m for (g, p), m in S.denominator.items()})


def sum_rational(functions: Sequence[MultivariateRationalFunction]) -> MultivariateRationalFunction:
    """Sum over the multiset-max union of all denominators."""
    functions = list(functions)
    if not functions:
        raise ValueError("empty sum")
    den: dict = {}
    for F in functions:
        den = _max_union(den, F.denominator)
    num = functions[0].over(den)
    for F in functions[1:]:
        num = num + F.over(den)
    return MultivariateRationalFunction(num, den)


def derivative(F: MultivariateRationalFunction, j: int) -> MultivariateRationalFunction:
    return F.derivative(j)


def specialize_one(F: MultivariateRationalFunction, coords: Iterable[int]):
    """Substitute ``z_j = 1`` for ``j in coords``.

    A factor whose exponent lives entirely on the specialized coordinates
    would become the constant ``1 - g``; that is rejected.  One remaining
    variable with a polynomial numerator gives a ``RationalGroupSeries``.
    """
    coords = sorted(set(coords))
    if not coords:
        return F
    keep = [j for j in range(F.nvars) if j not in coords]
    den = []
    for (g, u), m in F.denominator.items():
        u2 = tuple(u[j] for j in keep)
        if not any(u2):
            raise SpecializationError(f"factor (1 - {g} z^{u}) becomes constant at z_{coords} = 1")
        den.append(((g, u2), m))
    out = MultivariateRationalFunction(F.numerator.specialize(coords), den)
    if len(keep) == 1 and all(a[0] >= 0 for (a, _g) in out.numerator._terms):
        return out.to_series()
    return out


# -- transforms of cones and polytopes -------------------------------------------


def _lattice_points_of_shifted_pi(cone: HalfOpenCone) -> list:
    apex = cone.apex
    pi = HalfOpenParallelepiped(cone.generators, cone.open_flags)
    if all(c.denominator == 1 for c in apex):
        base = tuple(int(c) for c in apex)
        if not cone.generators:
            return [base]
        return [tuple(b + x for b, x in zip(base, p)) for p, _ in parallelepiped_points(pi)]
    if not cone.generators:
        return []
    return [p for p, _ in parallelepiped_points(pi, shift=apex)]


def cone_transform(cone: HalfOpenCone, phi: LatticeHomomorphism,
                   ring: CoefficientRing = ZZ) -> MultivariateRationalFunction:
    """``sum_{alpha in (apex + Pi)} phi(alpha) z^alpha / prod (1 - phi(u_i) z^u_i)``."""
    G = phi.group
    N = cone.dim_ambient
    num = GroupLaurentPolynomial(ring, G, N, [((a, phi(a)), 1) for a in _lattice_points_of_shifted_pi(cone)])
    den = [((phi(u), u), 1) for u in cone.generators]
    return MultivariateRationalFunction(num, den)


def _simplex_slice_points(s: HalfOpenSimplex) -> list:
    """Lattice points of a half-open simplex as the height-1 slice of the
    half-open cone over ``s x {1}``."""
    gens, scales = [], []
    for v in s.vertices:
        q = 1
        for c in v:
            q = q * c.denominator // math.gcd(q, c.denominator)
        gens.append(tuple(int(c * q) for c in v) + (q,))
        scales.append(q)
    pi = HalfOpenParallelepiped(gens, s.removed)
    pts = parallelepiped_points(pi)
    out = [p[:-1] for p, _ in pts if p[-1] == 1]
    if not any(s.removed):
        out += [g[:-1] for g, q in zip(gens, scales) if q == 1]
    return out


def polytope_transform(P, phi: LatticeHomomorphism, ring: CoefficientRing = ZZ) -> MultivariateRationalFunction:
    """``sigma(P, phi; z)``, a Laurent polynomial, summed over the half-open
    decomposition of ``P`` (or a given list of half-open simplices)."""
    if isinstance(P, Polytope):
        pieces = half_open_decomposition(P)
        N = P.dim_ambient
    else:
        pieces = [P] if isinstance(P, HalfOpenSimplex) else list(P)
        N = pieces[0].dim_ambient
    terms = [((a, phi(a)), 1) for s in pieces for a in _simplex_slice_points(s)]
    return MultivariateRationalFunction(GroupLaurentPolynomial(ring, phi.group, N, terms))


def vertex_cone_transforms(P: Polytope, phi: LatticeHomomorphism, ring: CoefficientRing = ZZ) -> list:
    """Transforms of the half-open simplicial pieces of every vertex cone."""
    out = []
    for K in vertex_cones(P):
        for piece in cone_simplicial_split(K):
            out.append(cone_transform(piece, phi, ring))
    return out


@dataclass
class BrionReport:
    lhs: MultivariateRationalFunction
    rhs: MultivariateRationalFunction
    equal: bool


def brion_check(P: Polytope, phi: LatticeHomomorphism, ring: CoefficientRing = ZZ) -> BrionReport:
    """``sigma(P) == sum_v sigma(K_v)`` decided by clearing denominators."""
    if not P.is_full_dimensional:
        raise DegenerateInput("Brion check needs a full-dimensional polytope")
    lhs = polytope_transform(P, phi, ring)
    rhs = sum_rational(vertex_cone_transforms(P, phi, ring))
    return BrionReport(lhs, rhs, lhs.equals(rhs))


# -- polynomial weights ----------------------------------------------------------


class Weight:
    """Polynomial ``sum c * x^a`` with integer coefficients."""

    def __init__(self, monomials: Iterable):
        acc: dict = {}
        for c, a in monomials:
            a = tuple(int(x) for x in a)
            acc[a] = acc.get(a, 0) + int(c)
        self.monomials = tuple(sorted((c, a) for a, c in acc.items() if c))
        dims = {len(a) for _, a in self.monomials}
        if len(dims) > 1:
            raise ValueError("weight monomials of different dimensions")

    @classmethod
    def one(cls, dim: int) -> Weight:
        return cls([(1, (0,) * dim)])

    @property
    def degree(self) -> int:
        return max((sum(a) for _, a in self.monomials), default=0)

    def __call__(self, x: Sequence[int]) -> int:
        total = 0
        for c, a in self.monomials:
            term = c
            for xi, ai in zip(x, a):
                term *= xi ** ai
            total += term
        return total

    def to_json(self) -> dict:
        return {"monomials": [{"coeff": c, "exponents": list(a)} for c, a in self.monomials]}

    @classmethod
    def from_json(cls, data: dict) -> Weight:
        return cls([(m["coeff"], m["exponents"]) for m in data["monomials"]])


def apply_weight(F: MultivariateRationalFunction, w: Weight, offset: int = 0) -> MultivariateRationalFunction:
    """``sum c * prod (z_j d/dz_j)^a_j F`` with variable ``j`` of the weight
    acting on variable ``offset + j`` of ``F``."""
    parts = []
    for c, a in w.monomials:
        G = F
        for j, k in enumerate(a):
            for _ in range(k):
                G = G.euler(offset + j)
        parts.append(MultivariateRationalFunction(G.numerator.scale(c), G.denominator))
    if not parts:
        return MultivariateRationalFunction(GroupLaurentPolynomial.zero(F.ring, F.group, F.nvars))
    return sum_rational(parts)


def weighted_transform(P, phi: LatticeHomomorphism, w: Weight, ring: CoefficientRing = ZZ) -> MultivariateRationalFunction:
    """``sigma(P, phi, w; z) = sum w(alpha) phi(alpha) z^alpha``."""
    if isinstance(P, HalfOpenCone):
        return apply_weight(cone_transform(P, phi, ring), w)
    return apply_weight(polytope_transform(P, phi, ring), w)


def weighted_brion_check(P: Polytope, phi: LatticeHomomorphism, w: Weight,
                         ring: CoefficientRing = ZZ) -> BrionReport:
    lhs = weighted_transform(P, phi, w, ring)
    rhs = sum_rational([apply_weight(F, w) for F in vertex_cone_transforms(P, phi, ring)])
    return BrionReport(lhs, rhs, lhs.equals(rhs))


def lifted_cone(s: HalfOpenSimplex) -> HalfOpenCone:
    """Cone over ``s x {1}`` with the height coordinate placed first."""
    if not s.is_lattice:
        raise ValueError("lifting needs lattice vertices")
    gens = [(1,) + tuple(int(c) for c in v) for v in s.vertices]
    return HalfOpenCone((0,) * (1 + s.dim_ambient), gens, s.removed)


def weighted_ehrhart_series(P, phi: LatticeHomomorphism, w: Weight,
                            ring: CoefficientRing = ZZ) -> RationalGroupSeries:
    """``sum_n (sum_{alpha in nP} w(alpha) phi(alpha)) t^n``.

    Per half-open simplex: Euler operators on the transform of the lifted
    cone in ``(t, z_1..z_d)``, then ``z = 1``.
    """
    if isinstance(P, Polytope):
        pieces = half_open_decomposition(P)
    else:
        pieces = [P] if isinstance(P, HalfOpenSimplex) else list(P)
    d = pieces[0].dim_ambient
    psi = LatticeHomomorphism(phi.group, [phi.group.identity] + list(phi.images))
    total = None
    for s in pieces:
        F = apply_weight(cone_transform(lifted_cone(s), psi, ring), w, offset=1)
        S = specialize_one(F, range(1, d + 1))
        if not isinstance(S, RationalGroupSeries):
            S = S.to_series()
        total = S if total is None else total + S
    return total


# -- q-weights ------------------------------------------------------------------


@dataclass
class QSeriesResult:
    series: RationalGroupSeries
    polynomial_in_q: bool
    group: AbelianGroup


def q_homomorphism(linear_form: Sequence[int], phi: LatticeHomomorphism | None = None,
                   dim: int | None = None) -> LatticeHomomorphism:
    """``psi(alpha) = q^{l(alpha)} phi(alpha)`` into ``G_q x G`` with ``G_q``
    realized as the free factor ``Z`` (coordinate 0)."""
    ell = [int(c) for c in linear_form]
    if phi is None:
        phi = LatticeHomomorphism.trivial(dim if dim is not None else len(ell))
    Gq, inj_q, inj_g = group_product(AbelianGroup.free(1), phi.group)
    return LatticeHomomorphism(Gq, [(l,) + tuple(g) for l, g in zip(ell, phi.images)])


def q_ehrhart_series(P, linear_form: Sequence[int], phi: LatticeHomomorphism | None = None,
                     ring: CoefficientRing = ZZ) -> QSeriesResult:
    """phi_q-Ehrhart series over ``G_q x G``; reports whether every
    numerator exponent of ``q`` is nonnegative."""
    psi = q_homomorphism(linear_form, phi, dim=len(linear_form))
    S = ehrhart_series(P, psi, ring)
    poly = all(g[0] >= 0 for c in S.numerator.coeffs for g in c.support())
    return QSeriesResult(S, poly, psi.group)


def group_coordinate_to_variable(S: RationalGroupSeries, coord: int = 0) -> MultivariateRationalFunction:
    """Turn a free group coordinate into a formal variable.

    ``R[Z x G][[t]]`` is viewed as ``R[G][q^+-][[t]]``; the result has
    variables ``(t, q)`` over the remaining group."""
    G = S.group
    if G.invariant_factors[coord] != 0:
        raise ValueError("only a free coordinate can become a variable")
    rest = AbelianGroup(G.invariant_factors[:coord] + G.invariant_factors[coord + 1:])

    def split(g):
        return g[coord], g[:coord] + g[coord + 1:]

    terms = []
    for n, x in enumerate(S.numerator.coeffs):
        for g, c in x.items():
            a, h = split(g)
            terms.append((((n, a), h), c))
    num = GroupLaurentPolynomial(S.ring, rest, 2, terms)
    den = []
    for (g, p), m in S.denominator.items():
        a, h = split(g)
        den.append(((h, (p, a)), m))
    return MultivariateRationalFunction(num, den)
