"""Univariate rational generating functions over ``R[G]``.

A series is a numerator polynomial in ``t`` with ``R[G]`` coefficients over
a multiset of factors ``(1 - g t^p)``.  Because ``R[G]`` has zero divisors,
equality is always decided by clearing denominators, and any cancellation is
only accepted after exact re-multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .geometry import HalfOpenSimplex, Polytope, half_open_decomposition
from .groups import AbelianGroup, LatticeHomomorphism
from .lattice import HalfOpenParallelepiped, parallelepiped_points
from .rings import ZZ, CoefficientRing, GroupRingElement, RingMismatch


class GroupRingPolynomial:
    """Polynomial in ``t`` with coefficients in ``R[G]`` (index = power)."""

    __slots__ = ("ring", "group", "coeffs")

    def __init__(self, ring: CoefficientRing, group: AbelianGroup, coeffs: Iterable = ()):
        self.ring = ring
        self.group = group
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, ring, group) -> GroupRingPolynomial:
        return cls(ring, group, ())

    @classmethod
    def one(cls, ring, group) -> GroupRingPolynomial:
        return cls(ring, group, [GroupRingElement.one(ring, group)])

    @classmethod
    def monomial(cls, ring, group, g, degree: int, c: int = 1) -> GroupRingPolynomial:
        z = GroupRingElement.zero(ring, group)
        return cls(ring, group, [z] * degree + [GroupRingElement.monomial(ring, group, g, c)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, n: int) -> GroupRingElement:
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return GroupRingElement.zero(self.ring, self.group)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other: GroupRingPolynomial):
        if self.ring != other.ring:
            raise RingMismatch(f"ring mismatch: {self.ring} vs {other.ring}")
        self.group.check(other.group)

    def __add__(self, other: GroupRingPolynomial) -> GroupRingPolynomial:
        self._check(other)
        n = max(len(self), len(other))
        return GroupRingPolynomial(self.ring, self.group, [self[i] + other[i] for i in range(n)])

    def __neg__(self):
        return GroupRingPolynomial(self.ring, self.group, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> GroupRingPolynomial:
        if isinstance(other, (int, GroupRingElement)):
            return GroupRingPolynomial(self.ring, self.group, [c * other for c in self.coeffs])
        self._check(other)
        if self.is_zero() or other.is_zero():
            return GroupRingPolynomial.zero(self.ring, self.group)
        out = [GroupRingElement.zero(self.ring, self.group)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return GroupRingPolynomial(self.ring, self.group, out)

    __rmul__ = __mul__

    def shift_group(self, g) -> GroupRingPolynomial:
        return GroupRingPolynomial(self.ring, self.group, [c.shift(g) for c in self.coeffs])

    def times_factor(self, g, p: int, power: int = 1) -> GroupRingPolynomial:
        """Multiply by ``(1 - g t^p)^power``."""
        cs = list(self.coeffs)
        for _ in range(power):
            out = cs + [GroupRingElement.zero(self.ring, self.group)] * p
            for n in range(len(cs)):
                if not cs[n].is_zero():
                    out[n + p] = out[n + p] - cs[n].shift(g)
            cs = out
        return GroupRingPolynomial(self.ring, self.group, cs)

    def truncated(self, n: int) -> GroupRingPolynomial:
        return GroupRingPolynomial(self.ring, self.group, self.coeffs[: n + 1])

    def __eq__(self, other):
        if not isinstance(other, GroupRingPolynomial):
            return NotImplemented
        return self.ring == other.ring and self.group == other.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.group, self.coeffs))

    def __repr__(self):
        return f"GroupRingPolynomial({list(self.coeffs)})"

    def pretty(self, symbol: str = "w") -> str:
        parts = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            s = c.pretty(symbol)
            if n == 0:
                parts.append(s)
                continue
            tn = "t" if n == 1 else f"t^{n}"
            if s == "1":
                parts.append(tn)
            elif len(c) == 1 and "+" not in s and " - " not in s:
                parts.append(f"{s}*{tn}")
            else:
                parts.append(f"({s})*{tn}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data: list, ring, group) -> GroupRingPolynomial:
        return cls(ring, group, [GroupRingElement.from_json(c, ring, group) for c in data])


@dataclass(frozen=True, order=True)
class DenominatorFactorT:
    """``(1 - g t^power_of_t)`` raised to ``multiplicity``."""

    power_of_t: int
    g: tuple
    multiplicity: int = 1


def _max_union(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, m in b.items():
        out[k] = max(out.get(k, 0), m)
    return out


class RationalGroupSeries:
    """``numerator / prod (1 - g t^p)^m`` with the product stored as
    ``{(g, p): m}``.  Equality (``==``) is equality of power series."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: GroupRingPolynomial, denominator: dict | Iterable = ()):
        self.numerator = numerator
        G = numerator.group
        den: dict = {}
        items = denominator.items() if isinstance(denominator, dict) else denominator
        for (g, p), m in items:
            if p < 1:
                raise ValueError("denominator factors need a positive power of t")
            if m < 0:
                raise ValueError("negative multiplicity")
            if m:
                key = (G.element(g), int(p))
                den[key] = den.get(key, 0) + m
        self.denominator = den

    @property
    def ring(self) -> CoefficientRing:
        return self.numerator.ring

    @property
    def group(self) -> AbelianGroup:
        return self.numerator.group

    def factors(self) -> list:
        return sorted(DenominatorFactorT(p, g, m) for (g, p), m in self.denominator.items())

    def over(self, denominator: dict) -> GroupRingPolynomial:
        """Numerator after rewriting over a larger denominator multiset."""
        num = self.numerator
        for (g, p), m in sorted(denominator.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            extra = m - self.denominator.get((g, p), 0)
            if extra < 0:
                raise ValueError("target denominator does not contain this one")
            if extra:
                num = num.times_factor(g, p, extra)
        return num

    def __add__(self, other: RationalGroupSeries) -> RationalGroupSeries:
        den = _max_union(self.denominator, other.denominator)
        return RationalGroupSeries(self.over(den) + other.over(den), den)

    def __neg__(self):
        return RationalGroupSeries(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> RationalGroupSeries:
        if isinstance(other, RationalGroupSeries):
            den = dict(self.denominator)
            for k, m in other.denominator.items():
                den[k] = den.get(k, 0) + m
            return RationalGroupSeries(self.numerator * other.numerator, den)
        return RationalGroupSeries(self.numerator * other, self.denominator)

    def equals(self, other: RationalGroupSeries) -> bool:
        """Cross-multiplication over the union denominator."""
        self.numerator._check(other.numerator)
        den = _max_union(self.denominator, other.denominator)
        return self.over(den) == other.over(den)

    def __eq__(self, other):
        if not isinstance(other, RationalGroupSeries):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def expand(self, N: int) -> list:
        return expand(self, N)

    def __repr__(self):
        return f"RationalGroupSeries({self.numerator!r}, {self.factors()})"

    def pretty(self, symbol: str = "w") -> str:
        G = self.group
        fs = []
        for f in self.factors():
            gt = "t" if f.power_of_t == 1 else f"t^{f.power_of_t}"
            g = GroupRingElement.monomial(self.ring, G, f.g).pretty(symbol)
            term = f"(1 - {gt})" if g == "1" else f"(1 - {g}*{gt})"
            fs.append(term if f.multiplicity == 1 else f"{term}^{f.multiplicity}")
        num = self.numerator.pretty(symbol)
        return f"({num}) / ({'*'.join(fs)})" if fs else num

    def to_json(self) -> dict:
        return {
            "numerator": self.numerator.to_json(),
            "denominator": [
                {"g": list(f.g), "power_of_t": f.power_of_t, "multiplicity": f.multiplicity}
                for f in self.factors()
            ],
        }

    @classmethod
    def from_json(cls, data: dict, ring: CoefficientRing, group: AbelianGroup) -> RationalGroupSeries:
        num = GroupRingPolynomial.from_json(data["numerator"], ring, group)
        den = [((tuple(f["g"]), int(f["power_of_t"])), int(f.get("multiplicity", 1))) for f in data["denominator"]]
        return cls(num, den)


def expand(S: RationalGroupSeries, N: int) -> list:
    """Taylor coefficients of ``S`` at ``t^0 .. t^N``."""
    if N < 0:
        return []
    c = [S.numerator[n] for n in range(N + 1)]
    for (g, p), m in sorted(S.denominator.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        for _ in range(m):
            # multiply by 1/(1 - g t^p) = sum g^k t^(kp)
            for n in range(p, N + 1):
                if not c[n - p].is_zero():
                    c[n] = c[n] + c[n - p].shift(g)
    return c


# -- h* and phi-Ehrhart series ------------------------------------------------


class RationalVertices(ValueError):
    """A lattice-only operation received a simplex with rational vertices."""


def hstar(simplex: HalfOpenSimplex, phi: LatticeHomomorphism, ring: CoefficientRing = ZZ):
    """The h*_phi polynomial of a half-open lattice simplex.

    Returns ``(numerator, denominator)`` where the numerator sums
    ``phi(beta) t^m`` over the lattice points ``(beta, m)`` of the
    fundamental parallelepiped of the cone over ``simplex x {1}``, and the
    denominator is ``{(phi(v_i), 1): multiplicity}``.
    """
    if not simplex.is_lattice:
        raise RationalVertices("h* needs lattice vertices; use shifted_dilation_series")
    if phi.ambient_dim != simplex.dim_ambient:
        raise ValueError("homomorphism and simplex live in different dimensions")
    G = phi.group
    gens = [tuple(int(c) for c in v) + (1,) for v in simplex.vertices]
    pi = HalfOpenParallelepiped(gens, simplex.removed)
    coeffs: dict = {}
    for point, _lam in parallelepiped_points(pi):
        beta, m = point[:-1], point[-1]
        coeffs.setdefault(m, []).append((phi(beta), 1))
    top = max(coeffs, default=-1)
    num = GroupRingPolynomial(
        ring, G, [GroupRingElement(ring, G, coeffs.get(m, ())) for m in range(top + 1)]
    )
    den: dict = {}
    for v in simplex.vertices:
        key = (phi(tuple(int(c) for c in v)), 1)
        den[key] = den.get(key, 0) + 1
    return num, den


def simplex_series(simplex: HalfOpenSimplex, phi: LatticeHomomorphism,
                   ring: CoefficientRing = ZZ) -> RationalGroupSeries:
    num, den = hstar(simplex, phi, ring)
    return RationalGroupSeries(num, den)


def _pieces(P) -> list:
    if isinstance(P, Polytope):
        return half_open_decomposition(P)
    if isinstance(P, HalfOpenSimplex):
        return [P]
    return list(P)


def ehrhart_series(P, phi: LatticeHomomorphism, ring: CoefficientRing = ZZ) -> RationalGroupSeries:
    """phi-Ehrhart series of a lattice polytope, a half-open simplex, or a
    manual half-open decomposition (list of simplices)."""
    pieces = _pieces(P)
    if not pieces:
        raise ValueError("empty decomposition")
    total = None
    for s in pieces:
        S = simplex_series(s, phi, ring)
        total = S if total is None else total + S
    return total


# -- reciprocity ----------------------------------------------------------------


def invert_t(S: RationalGroupSeries) -> RationalGroupSeries:
    """``S(1/t)`` rewritten over factors ``(1 - g^-1 t^p)``.

    Uses ``1/(1 - h t^-p) = (-h^-1 t^p) / (1 - h^-1 t^p)``.  Raises when the
    result is not a polynomial over the new factors.
    """
    G, R = S.group, S.ring
    shift = 0
    unit = GroupRingElement.one(R, G)
    den = {}
    for (h, p), m in S.denominator.items():
        hinv = G.inv(h)
        unit = unit * GroupRingElement.monomial(R, G, hinv, (-1) ** m)
        for _ in range(m - 1):
            unit = unit.shift(hinv)
        shift += p * m
        den[(hinv, p)] = den.get((hinv, p), 0) + m
    deg = S.numerator.degree
    if deg > shift:
        raise ValueError("S(1/t) does not have a polynomial numerator over the inverted factors")
    coeffs = [GroupRingElement.zero(R, G)] * (shift + 1)
    for n, c in enumerate(S.numerator.coeffs):
        coeffs[shift - n] = c * unit
    return RationalGroupSeries(GroupRingPolynomial(R, G, coeffs), den)


@dataclass
class ReciprocityReport:
    hstar_lhs: GroupRingPolynomial
    hstar_rhs: GroupRingPolynomial
    hstar_equal: bool
    series_lhs: RationalGroupSeries
    series_rhs: RationalGroupSeries
    series_equal: bool

    @property
    def equal(self) -> bool:
        return self.hstar_equal and self.series_equal


def reciprocity_check(simplex: HalfOpenSimplex, phi: LatticeHomomorphism,
                      ring: CoefficientRing = ZZ) -> ReciprocityReport:
    """Compare ``h*(D', phi; t)`` with ``phi(sum v) t^k h*(D, phi'; 1/t)`` and
    ``E(D, phi'; 1/t)`` with ``(-1)^k E(D', phi; t)``, ``k`` = #vertices.

    Both sides come from separate parallelepiped enumerations of the simplex
    and its complement.
    """
    G = phi.group
    k = len(simplex.vertices)
    comp = simplex.complement()
    phi_inv = phi.invert()

    lhs, _ = hstar(comp, phi, ring)
    h_inv, _ = hstar(simplex, phi_inv, ring)
    vsum = tuple(sum(int(v[j]) for v in simplex.vertices) for j in range(simplex.dim_ambient))
    g_sum = phi(vsum)
    if h_inv.degree > k:
        raise AssertionError("h* degree exceeds the number of vertices")
    rev = [GroupRingElement.zero(ring, G)] * (k + 1)
    for m, c in enumerate(h_inv.coeffs):
        rev[k - m] = c.shift(g_sum)
    rhs = GroupRingPolynomial(ring, G, rev)

    series_lhs = invert_t(simplex_series(simplex, phi_inv, ring))
    series_rhs = simplex_series(comp, phi, ring) * ((-1) ** k)
    return ReciprocityReport(lhs, rhs, lhs == rhs, series_lhs, series_rhs, series_lhs.equals(series_rhs))


# -- coset counts and shifted dilations ---------------------------------------


def coset_counts(x, r: int, n: int | None = None) -> list:
    """``theta_0 .. theta_{r-1}``: the coefficient of ``w^i`` in an element
    of ``Z[C_r]``.  ``x`` may be a series, in which case ``n`` selects the
    coefficient of ``t^n``."""
    if isinstance(x, RationalGroupSeries):
        if n is None:
            raise ValueError("a coefficient index n is needed for a series")
        x = expand(x, n)[n]
    if x.group != AbelianGroup.cyclic(r) or x.ring != ZZ:
        raise ValueError(f"coset counts need Z[C_{r}], got {x.ring}[{x.group}]")
    return [x.coeff((i,)) for i in range(r)]


def shifted_dilation_series(P: Polytope, v: Sequence, q: int | None = None) -> RationalGroupSeries:
    """``sum_n |(nP - v) & Z^d| t^n`` as ``h_v*(t) / (1 - t^q)^(k+1)``.

    ``Q = qP`` is a lattice polytope; its lattice points are weighted in
    ``(Z_q)^d`` by their residues, every factor ``(1 - phi(v_i) t)`` is
    completed to ``1 - t^q``, and ``h_v*`` is read off at the residue class
    of ``q v``.
    """
    v = tuple(Fraction(c) if not isinstance(c, (list, tuple)) else Fraction(c[0], c[1]) for c in v)
    d = P.dim_ambient
    if len(v) != d:
        raise ValueError("shift vector has the wrong dimension")
    need = P.denominator
    for c in v:
        need = lcm(need, c.denominator)
    if q is None:
        q = need
    elif q % need:
        raise ValueError(f"denominator {q} is not a multiple of {need}")
    G = AbelianGroup((q,) * d)
    # with q = 1 the residue group is trivial and elements have no coordinates
    cut = d if q > 1 else 0
    phi = LatticeHomomorphism(G, [[int(i == j) for j in range(cut)] for i in range(d)])
    Q = P.scaled(q)
    k = Q.dim + 1
    target = G.element([int(c * q) for c in v][:cut])
    total = GroupRingPolynomial.zero(ZZ, G)
    for s in half_open_decomposition(Q):
        num, den = hstar(s, phi, ZZ)
        for (g, _p), m in den.items():
            cof = GroupRingPolynomial(
                ZZ, G, [GroupRingElement.monomial(ZZ, G, G.power(g, i)) for i in range(q)]
            )
            for _ in range(m):
                num = num * cof
        total = total + num
    T = AbelianGroup.trivial()
    h = GroupRingPolynomial(ZZ, T, [GroupRingElement.monomial(ZZ, T, (), c.coeff(target)) for c in total])
    return RationalGroupSeries(h, {((), q): k})


# -- simplification ---------------------------------------------------------


def _divide_by_factor(num: GroupRingPolynomial, g, p: int) -> GroupRingPolynomial | None:
    """Exact quotient ``num / (1 - g t^p)`` if it is a polynomial."""
    if num.is_zero():
        return num
    deg = num.degree - p
    if deg < 0:
        return None
    q = [num[n] for n in range(deg + 1)]
    for n in range(p, deg + 1):
        q[n] = q[n] + q[n - p].shift(g)
    quot = GroupRingPolynomial(num.ring, num.group, q)
    return quot if quot.times_factor(g, p) == num else None


def simplify_best_effort(S: RationalGroupSeries) -> RationalGroupSeries:
    """Cancel denominator factors whose division of the numerator is
    verified exact by re-multiplication.  Never changes the expansion."""
    num = S.numerator
    den = dict(S.denominator)
    changed = True
    while changed:
        changed = False
        for (g, p) in sorted(den, key=lambda k: (k[1], k[0])):
            if den[(g, p)] == 0:
                continue
            quot = _divide_by_factor(num, g, p)
            if quot is not None:
                num = quot
                den[(g, p)] -= 1
                changed = True
                break
    return RationalGroupSeries(num, {k: m for k, m in den.items() if m})
