"""Finite linear group actions on the lattice and class-function-valued
phi-Ehrhart coefficients.

Coefficients come from fixed-point sums over the brute-force enumeration;
closed rational forms are only ever checked, never derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import oracle
from .geometry import Polytope
from .groups import LatticeHomomorphism
from .rings import ZZ, CoefficientRing, GroupRingElement
from .series import RationalGroupSeries

Matrix = tuple


class InvarianceError(ValueError):
    pass


def _mat(m) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in m)


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _apply(h: Matrix, x: Sequence) -> tuple:
    return tuple(sum(r[j] * x[j] for j in range(len(x))) for r in h)


def _identity(d: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


class GroupAction:
    """A finite group of integer matrices acting on ``Z^d``."""

    def __init__(self, elements: Sequence):
        mats = []
        for m in elements:
            m = _mat(m)
            if m not in mats:
                mats.append(m)
        if not mats:
            raise ValueError("a group action needs at least the identity")
        d = len(mats[0])
        if any(len(m) != d or any(len(r) != d for r in m) for m in mats):
            raise ValueError("matrices must all be square of the same size")
        self.dim = d
        ident = _identity(d)
        if ident not in mats:
            raise ValueError("identity matrix missing")
        index = set(mats)
        for a in mats:
            if not any(_matmul(a, b) == ident for b in mats):
                raise ValueError(f"no inverse for {a}")
            for b in mats:
                if _matmul(a, b) not in index:
                    raise ValueError("matrices are not closed under multiplication")
        # identity first, the rest in input order
        self.elements = [ident] + [m for m in mats if m != ident]
        self._inv = {a: next(b for b in self.elements if _matmul(a, b) == ident) for a in self.elements}
        self.classes = self._conjugacy_classes()

    @classmethod
    def generated_by(cls, generators: Sequence, dim: int | None = None) -> GroupAction:
        gens = [_mat(g) for g in generators]
        if not gens and dim is None:
            raise ValueError("need a generator or a dimension")
        d = len(gens[0]) if gens else dim
        elems = [_identity(d)]
        frontier = list(elems)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = _matmul(a, g)
                    if b not in elems:
                        if len(elems) > 10_000:
                            raise ValueError("generated group is too large or infinite")
                        elems.append(b)
                        nxt.append(b)
            frontier = nxt
        return cls(elems)

    @classmethod
    def trivial(cls, dim: int) -> GroupAction:
        return cls([_identity(dim)])

    def _conjugacy_classes(self) -> list:
        seen, classes = set(), []
        for a in self.elements:
            if a in seen:
                continue
            cls_ = []
            for g in self.elements:
                c = _matmul(_matmul(g, a), self._inv[g])
                if c not in cls_:
                    cls_.append(c)
            seen.update(cls_)
            classes.append([self.elements.index(c) for c in sorted(cls_, key=self.elements.index)])
        return classes

    def representative(self, k: int) -> Matrix:
        return self.elements[self.classes[k][0]]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def to_json(self) -> dict:
        return {"matrices": [[list(r) for r in m] for m in self.elements]}

    @classmethod
    def from_json(cls, data: dict) -> GroupAction:
        return cls.generated_by(data["matrices"])


@dataclass
class ClassFunction:
    """One group ring element per conjugacy class, identity class first."""

    action: GroupAction
    values: list

    def __post_init__(self):
        if len(self.values) != len(self.action.classes):
            raise ValueError("one value per conjugacy class required")

    def __getitem__(self, k: int) -> GroupRingElement:
        return self.values[k]

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.values == other.values

    def __add__(self, other: ClassFunction) -> ClassFunction:
        return ClassFunction(self.action, [a + b for a, b in zip(self.values, other.values)])

    def to_json(self) -> list:
        return [
            {"class": [[list(r) for r in self.action.elements[i]] for i in cl], "value": v.to_json()}
            for cl, v in zip(self.action.classes, self.values)
        ]


def check_invariance(P: Polytope, H: GroupAction) -> bool:
    if P.dim_ambient != H.dim:
        raise ValueError("dimension mismatch between polytope and action")
    verts = set(P.vertices)
    return all({_apply(h, v) for v in P.vertices} == verts for h in H.elements)


def check_phi_invariance(phi: LatticeHomomorphism, H: GroupAction) -> bool:
    d = H.dim
    for h in H.elements:
        for i in range(d):
            e = tuple(int(j == i) for j in range(d))
            if phi(_apply(h, e)) != phi(e):
                return False
    return True


def _require_invariant(P, phi, H):
    if not check_invariance(P, H):
        raise InvarianceError("polytope is not invariant under the action")
    if not check_phi_invariance(phi, H):
        raise InvarianceError("phi is not invariant under the action")


def _fixed_sum(points, phi, h, ring) -> GroupRingElement:
    return GroupRingElement(ring, phi.group, [(phi(a), 1) for a in points if _apply(h, a) == tuple(a)])


def equivariant_coeff(P: Polytope, phi: LatticeHomomorphism, H: GroupAction, n: int,
                      ring: CoefficientRing = ZZ) -> ClassFunction:
    """``h -> sum phi(alpha)`` over lattice points of ``nP`` fixed by ``h``."""
    _require_invariant(P, phi, H)
    pts = oracle.enumerate(P, n).points
    return ClassFunction(H, [_fixed_sum(pts, phi, H.representative(k), ring) for k in range(len(H.classes))])


def class_constancy(P: Polytope, phi: LatticeHomomorphism, H: GroupAction, n: int,
                    ring: CoefficientRing = ZZ) -> bool:
    """Fixed-point sums agree across all members of every class."""
    pts = oracle.enumerate(P, n).points
    for cl in H.classes:
        vals = {_fixed_sum(pts, phi, H.elements[i], ring) for i in cl}
        if len(vals) > 1:
            return False
    return True


@dataclass
class Orbit:
    points: tuple
    phi_value: tuple
    character: tuple  # fixed-point counts per conjugacy class


def orbit_decomposition(P: Polytope, phi: LatticeHomomorphism, H: GroupAction, n: int) -> list:
    _require_invariant(P, phi, H)
    pts = oracle.enumerate(P, n).points
    seen, out = set(), []
    for a in pts:
        if a in seen:
            continue
        orb = sorted({_apply(h, a) for h in H.elements})
        seen.update(orb)
        vals = {phi(b) for b in orb}
        if len(vals) != 1:
            raise InvarianceError(f"phi is not constant on the orbit of {a}")
        char = tuple(
            sum(1 for b in orb if _apply(H.representative(k), b) == b) for k in range(len(H.classes))
        )
        out.append(Orbit(tuple(orb), vals.pop(), char))
    return out


def aggregate_orbits(orbits: Sequence[Orbit], phi: LatticeHomomorphism, H: GroupAction,
                     ring: CoefficientRing = ZZ) -> ClassFunction:
    """``sum phi(O) * char(rho_O)``."""
    return ClassFunction(
        H,
        [
            GroupRingElement(ring, phi.group, [(o.phi_value, o.character[k]) for o in orbits])
            for k in range(len(H.classes))
        ],
    )


@dataclass
class ClosedFormReport:
    computed: list  # per n, a ClassFunction
    expected: list  # per class, list of coefficients
    equal: bool
    mismatches: list


def verify_closed_form(P: Polytope, phi: LatticeHomomorphism, H: GroupAction,
                       closed_form: Sequence[RationalGroupSeries], N: int,
                       ring: CoefficientRing = ZZ) -> ClosedFormReport:
    """Compare per-class expansions of ``closed_form`` with the fixed-point
    sums for ``n = 0..N``."""
    if len(closed_form) != len(H.classes):
        raise ValueError("one closed form per conjugacy class required")
    computed = [equivariant_coeff(P, phi, H, n, ring) for n in range(N + 1)]
    expected = [S.expand(N) for S in closed_form]
    mismatches = [
        (n, k)
        for n in range(N + 1)
        for k in range(len(H.classes))
        if computed[n][k] != expected[k][n]
    ]
    return ClosedFormReport(computed, expected, not mismatches, mismatches)
