"""Brute-force reference sums.

Membership is decided from an inequality description obtained by eliminating
the convex (or conic) multipliers with Fourier-Motzkin.  Nothing here touches
triangulations, Smith forms or generating functions; the only shared pieces
are the group ring arithmetic and the box-scan kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import kernels
from .rings import ZZ, CoefficientRing, GroupRingElement

GE, GT, EQ = ">=", ">", "="


@dataclass(frozen=True)
class EnumerationResult:
    n: int
    points: tuple

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def _frac_point(p) -> tuple:
    out = []
    for c in p:
        if isinstance(c, (list, tuple)):
            out.append(Fraction(int(c[0]), int(c[1])))
        else:
            out.append(Fraction(c))
    return tuple(out)


def _normalize(row: list) -> tuple:
    """Scale a rational row to coprime integers (sign preserved)."""
    den = 1
    for c in row:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in row]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return tuple(c // g for c in ints) if g else tuple(ints)


def _eliminate(gens: tuple, apex: tuple, strict: tuple, summed: bool):
    """Constraints on ``(x, s)`` for ``x = s*apex + sum lam_i g_i`` with
    ``lam_i >= 0`` (``> 0`` where strict) and, if ``summed``, ``sum lam_i = s``.

    Returns rows ``(coeffs over x then s, relation)`` with integer coeffs.
    """
    m, d = len(gens), len(apex)
    nv = m + d + 1  # lam, x, s
    eqs = []
    for j in range(d):
        row = [Fraction(0)] * nv
        for i in range(m):
            row[i] = -Fraction(gens[i][j])
        row[m + j] = Fraction(1)
        row[m + d] = -Fraction(apex[j])
        eqs.append(row)
    if summed:
        row = [Fraction(1)] * m + [Fraction(0)] * d + [Fraction(-1)]
        eqs.append(row)
    # Gaussian elimination on the lam columns
    pivots = {}
    r = 0
    for col in range(m):
        piv = next((k for k in range(r, len(eqs)) if eqs[k][col] != 0), None)
        if piv is None:
            continue
        eqs[r], eqs[piv] = eqs[piv], eqs[r]
        p = eqs[r][col]
        eqs[r] = [c / p for c in eqs[r]]
        for k in range(len(eqs)):
            if k != r and eqs[k][col] != 0:
                f = eqs[k][col]
                eqs[k] = [a - f * b for a, b in zip(eqs[k], eqs[r])]
        pivots[col] = r
        r += 1
    out_eq = [row for row in eqs[r:] if any(row)]
    # inequalities lam_i (>=|>) 0, with pivot lam substituted
    ineqs = []
    for i in range(m):
        if i in pivots:
            row = [-c for c in eqs[pivots[i]]]
            row[i] = Fraction(0)
        else:
            row = [Fraction(0)] * nv
            row[i] = Fraction(1)
        ineqs.append((row, strict[i], frozenset([i])))
    free = [i for i in range(m) if i not in pivots]
    for step, col in zip(range(1, len(free) + 1), free):
        pos = [q for q in ineqs if q[0][col] > 0]
        neg = [q for q in ineqs if q[0][col] < 0]
        zero = [q for q in ineqs if q[0][col] == 0]
        new = list(zero)
        seen = set()
        for rp, sp, hp in pos:
            for rn, sn, hn in neg:
                hist = hp | hn
                if len(hist) > step + 1:  # Chernikov: redundant
                    continue
                a, b = rp[col], -rn[col]
                row = [b * x + a * y for x, y in zip(rp, rn)]
                key = (_normalize(row), sp or sn)
                if key in seen:
                    continue
                seen.add(key)
                new.append((row, sp or sn, hist))
        ineqs = new
    rows = []
    for row, st, _ in ineqs:
        tail = row[m:]
        if any(tail):
            rows.append((_normalize(tail), GT if st else GE))
        elif st:
            rows.append((None, "empty"))  # 0 > 0
    for row in out_eq:
        rows.append((_normalize(row[m:]), EQ))
    return tuple(sorted(set(rows), key=repr))


def _scan(rows, s: int, lo, hi) -> list:
    if any(r == (None, "empty") for r in rows):
        return []
    A, c, strict = [], [], []
    for coeffs, rel in rows:
        a, b = list(coeffs[:-1]), coeffs[-1] * s
        if rel == EQ:
            A += [a, [-x for x in a]]
            c += [b, -b]
            strict += [False, False]
        else:
            A.append(a)
            c.append(b)
            strict.append(rel == GT)
    return kernels.scan_halfspaces(A, c, strict, lo, hi)


def _box(points, n) -> tuple[list, list]:
    d = len(points[0])
    lo = [math.floor(min(p[j] for p in points) * n) for j in range(d)]
    hi = [math.ceil(max(p[j] for p in points) * n) for j in range(d)]
    return lo, hi


@lru_cache(maxsize=512)
def _polytope_rows(vertices: tuple, strict: tuple):
    return _eliminate(vertices, (Fraction(0),) * len(vertices[0]), strict, summed=True)


def _pieces(P):
    """``[(vertices, strict flags)]`` for a polytope, half-open simplex,
    list of half-open simplices or a bare list of points."""
    if hasattr(P, "removed"):
        return [(tuple(_frac_point(v) for v in P.vertices), tuple(bool(f) for f in P.removed))]
    if hasattr(P, "vertices"):
        vs = tuple(_frac_point(v) for v in P.vertices)
        return [(vs, (False,) * len(vs))]
    items = list(P)
    if items and all(hasattr(x, "vertices") for x in items):
        return [pc for x in items for pc in _pieces(x)]
    vs = tuple(_frac_point(v) for v in items)
    return [(vs, (False,) * len(vs))]


def enumerate(P, n: int = 1) -> EnumerationResult:  # noqa: A001 - mirrors the operation name
    """Lattice points of ``nP`` (half-open pieces respected), sorted."""
    if n < 0:
        raise ValueError("dilation factor must be nonnegative")
    pts = []
    for vs, strict in _pieces(P):
        rows = _polytope_rows(vs, strict)
        lo, hi = _box(vs, n)
        pts.extend(_scan(rows, n, lo, hi))
    return EnumerationResult(n, tuple(sorted(pts)))


def cone_points(apex, generators, open_flags=None, lo=None, hi=None) -> list:
    """Lattice points of ``apex + cone(generators)`` inside the box."""
    apex = _frac_point(apex)
    gens = tuple(_frac_point(u) for u in generators)
    flags = tuple(bool(f) for f in open_flags) if open_flags is not None else (False,) * len(gens)
    rows = _eliminate(gens, apex, flags, summed=False)
    return sorted(_scan(rows, 1, list(lo), list(hi)))


def brute_ehrhart(P, phi, n: int, ring: CoefficientRing = ZZ) -> GroupRingElement:
    return GroupRingElement(ring, phi.group, [(phi(a), 1) for a in enumerate(P, n).points])


def brute_weighted(P, phi, w, n: int, ring: CoefficientRing = ZZ) -> GroupRingElement:
    return GroupRingElement(ring, phi.group, [(phi(a), w(a)) for a in enumerate(P, n).points])


def brute_count(P, n: int) -> int:
    return len(enumerate(P, n))


def brute_transform(Q, phi, lo=None, hi=None, ring: CoefficientRing = ZZ, weight=None) -> dict:
    """``{alpha: w(alpha) phi(alpha)}`` over the lattice points of a polytope
    (all of them) or of a cone (inside the box ``lo..hi``)."""
    if hasattr(Q, "generators") and hasattr(Q, "open_flags"):
        pts = cone_points(Q.apex, Q.generators, Q.open_flags, lo, hi)
    else:
        pts = enumerate(Q, 1).points
        if lo is not None:
            pts = [p for p in pts if all(l <= x <= h for x, l, h in zip(p, lo, hi))]
    out = {}
    for a in pts:
        c = 1 if weight is None else weight(a)
        x = GroupRingElement(ring, phi.group, [(phi(a), c)])
        if not x.is_zero():
            out[tuple(a)] = x
    return out


def _apply(h: Sequence[Sequence[int]], a: Sequence[int]) -> tuple:
    return tuple(sum(r[j] * a[j] for j in range(len(a))) for r in h)


def brute_fixed(P, phi, h, n: int, ring: CoefficientRing = ZZ) -> GroupRingElement:
    """``sum phi(alpha)`` over lattice points of ``nP`` fixed by the matrix ``h``."""
    pts = [a for a in enumerate(P, n).points if _apply(h, a) == tuple(a)]
    return GroupRingElement(ring, phi.group, [(phi(a), 1) for a in pts])


def shifted_count(P, v, n: int) -> int:
    """``|(nP - v) cap Z^d|``."""
    vs = tuple(_frac_point(p) for p in P.vertices)
    v = _frac_point(v)
    shifted = tuple(tuple(c * n - s for c, s in zip(p, v)) for p in vs)
    rows = _polytope_rows(shifted, (False,) * len(shifted))
    lo, hi = _box(shifted, 1)
    return len(_scan(rows, 1, lo, hi))
