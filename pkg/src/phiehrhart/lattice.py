"""Exact integer linear algebra: Smith normal form, rational solves and the
lattice points of half-open fundamental parallelepipeds.

Matrices are lists of rows of Python ints (or Fractions where noted).  No
floating point is used anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, ceil
from typing import Sequence

from . import kernels

Matrix = list  # list of lists of int


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def matvec(A: Matrix, x: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def columns_to_matrix(vectors: Sequence[Sequence[int]]) -> Matrix:
    """Matrix whose columns are the given vectors."""
    return [list(row) for row in zip(*vectors)]


def det(A: Matrix) -> int:
    """Determinant of a square integer matrix (Bareiss fraction-free)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rref(A: Sequence[Sequence]) -> tuple[list, list]:
    """Reduced row echelon form over Q. Returns ``(R, pivot_columns)``."""
    M = [[Fraction(x) for x in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def nullspace(A: Sequence[Sequence], ncols: int | None = None) -> list:
    """Basis (over Q, scaled to primitive integer vectors) of ``{x : A x = 0}``."""
    if not A:
        n = ncols or 0
        return [[int(i == j) for j in range(n)] for i in range(n)]
    R, pivots = rref(A)
    n = len(R[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(primitive(v))
    return basis


def primitive(v: Sequence) -> list:
    """Scale a rational vector to the primitive integer vector in its direction."""
    from math import gcd, lcm

    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    return [x // g for x in ints]


def inverse(A: Matrix) -> list:
    """Inverse over Q of a nonsingular square matrix."""
    n = len(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def adjugate(A: Matrix) -> tuple[Matrix, int]:
    """``(adj(A), det(A))`` for a nonsingular square integer matrix."""
    d = det(A)
    if d == 0:
        raise ValueError("matrix is singular")
    inv = inverse(A)
    return [[int(x * d) for x in row] for row in inv], d


def solve_rational(U: Matrix, x: Sequence[int]) -> list | None:
    """The unique rational ``lam`` with ``U lam = x``, or ``None`` when ``x``
    is outside the column span.  ``U`` must have full column rank."""
    rows = len(U)
    cols = len(U[0]) if rows else 0
    aug = [list(U[i]) + [x[i]] for i in range(rows)]
    R, pivots = rref(aug)
    if cols in pivots:
        return None
    if pivots != list(range(cols)):
        raise ValueError("matrix does not have full column rank")
    return [R[i][cols] for i in range(cols)]


# -- Smith normal form -------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """``U = L * D * R`` with ``L``, ``R`` unimodular and ``D`` diagonal,
    ``d_1 | d_2 | ...``."""

    L: Matrix
    D: Matrix
    R: Matrix

    @property
    def diagonal(self) -> list:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]


def snf(U: Matrix) -> SmithDecomposition:
    """Smith normal form by elementary row and column operations.

    Row operations ``A <- E A`` are recorded as ``L <- L E^-1`` and column
    operations ``A <- A F`` as ``R <- F^-1 R``, so ``L A R == U`` throughout.
    """
    m = len(U)
    n = len(U[0]) if m else 0
    A = [list(row) for row in U]
    L = identity(m)
    R = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        for row in L:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        R[i], R[j] = R[j], R[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        for row in L:
            row[src] -= k * row[dst]

    def add_col(dst, src, k):
        # col_dst += k * col_src
        for row in A:
            row[dst] += k * row[src]
        R[src] = [a - k * b for a, b in zip(R[src], R[dst])]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        for row in L:
            row[i] = -row[i]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nz:
                return SmithDecomposition(L, A, R)
            _, pi, pj = min(nz)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        done = False
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            negate_row(t)
    return SmithDecomposition(L, A, R)


# -- fundamental parallelepipeds ------------------------------------------


class DependentGenerators(ValueError):
    pass


@dataclass(frozen=True)
class HalfOpenParallelepiped:
    """``{sum lam_i u_i}`` with ``lam_i in (0,1]`` where ``open_flags[i]`` is
    true and ``lam_i in [0,1)`` otherwise."""

    generators: tuple
    open_flags: tuple

    def __init__(self, generators, open_flags=None):
        gens = tuple(tuple(int(x) for x in u) for u in generators)
        flags = tuple(bool(f) for f in open_flags) if open_flags is not None else (False,) * len(gens)
        if len(flags) != len(gens):
            raise ValueError("one open flag per generator required")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "open_flags", flags)

    @property
    def ambient_dim(self) -> int:
        return len(self.generators[0]) if self.generators else 0

    def matrix(self) -> Matrix:
        return columns_to_matrix(self.generators)


def _normalize(lam: Fraction, is_open: bool) -> Fraction:
    if is_open:
        return lam - ceil(lam) + 1
    return lam - floor(lam)


def saturation_basis(gens: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Basis ``B`` (columns) of ``span_Q(gens) & Z^N`` and the coordinates
    ``C`` of the generators in that basis (``gens == B C`` columnwise)."""
    U = columns_to_matrix(gens)
    N, D = len(U), len(gens)
    dec = snf(U)
    diag = dec.diagonal
    if len(diag) < D or any(d == 0 for d in diag[:D]):
        raise DependentGenerators("generators are linearly dependent")
    B = [row[:D] for row in dec.L]
    # U = L D R and only the first D rows of D R are nonzero
    C = [[diag[i] * dec.R[i][j] for j in range(D)] for i in range(D)]
    assert len(B) == N
    return B, C


def parallelepiped_points(
    pi: HalfOpenParallelepiped, shift: Sequence | None = None
) -> list:
    """Lattice points of ``shift + pi`` with their coordinates ``lam``.

    Returns a list of ``(point, lam)`` pairs sorted by point, where
    ``point == shift + sum lam_i u_i``.  Cosets of ``Z^N / U Z^N`` are
    walked through the Smith form of ``U``; each coset representative is
    moved into the half-open box by taking fractional parts of ``lam``.
    Lower-dimensional generator sets are first rewritten in a basis of their
    saturation lattice (a nonzero ``shift`` is only allowed at full rank).
    """
    gens = pi.generators
    D = len(gens)
    if D == 0:
        if shift is not None and any(Fraction(s).denominator != 1 for s in shift):
            return []
        n = len(shift) if shift is not None else 0
        base = tuple(int(s) for s in shift) if shift is not None else ()
        return [(base if n else (), ())]
    N = len(gens[0])
    if D < N:
        if shift is not None and any(s != 0 for s in shift):
            raise ValueError("shifted enumeration needs full-rank generators")
        B, C = saturation_basis(gens)
        sub = HalfOpenParallelepiped(columns_to_matrix_cols(C), pi.open_flags)
        out = [(tuple(matvec(B, p)), lam) for p, lam in parallelepiped_points(sub)]
        out.sort()
        return out
    if D > N:
        raise DependentGenerators("more generators than the ambient dimension")
    U = pi.matrix()
    if det(U) == 0:
        raise DependentGenerators("generators are linearly dependent")
    if shift is None or all(Fraction(s) == 0 for s in shift):
        return _full_rank_points(U, pi.open_flags)
    return _shifted_points(U, pi.open_flags, [Fraction(s) for s in shift])


def columns_to_matrix_cols(C: Matrix) -> list:
    """Columns of ``C`` as a list of vectors."""
    return [list(col) for col in zip(*C)]


def _full_rank_points(U: Matrix, flags) -> list:
    dec = snf(U)
    adj, d = adjugate(U)
    pts, nums = kernels.fpp_enumerate(U, adj, d, dec.L, dec.diagonal, flags)
    D = abs(d)
    return sorted(
        (tuple(p), tuple(Fraction(r, D) for r in num)) for p, num in zip(pts, nums)
    )


def _shifted_points(U: Matrix, flags, shift: list) -> list:
    dec = snf(U)
    inv = inverse(U)
    N = len(U)
    diag = dec.diagonal
    out = []
    counter = [0] * N
    while True:
        x = matvec(dec.L, counter)
        lam = matvec(inv, [xi - si for xi, si in zip(x, shift)])
        lam = [_normalize(l, f) for l, f in zip(lam, flags)]
        p = [s + v for s, v in zip(shift, matvec(U, lam))]
        assert all(c.denominator == 1 for c in p)
        out.append((tuple(int(c) for c in p), tuple(lam)))
        i = 0
        while i < N:
            counter[i] += 1
            if counter[i] < diag[i]:
                break
            counter[i] = 0
            i += 1
        if i == N:
            break
    out.sort()
    return out


def naive_parallelepiped_points(pi: HalfOpenParallelepiped, shift: Sequence | None = None) -> list:
    """Bounding-box scan with an exact membership test.  Reference backend
    for tests only; exponential in the dimension."""
    from itertools import product

    gens = pi.generators
    if not gens:
        return parallelepiped_points(pi, shift)
    N = len(gens[0])
    shift = [Fraction(s) for s in shift] if shift is not None else [Fraction(0)] * N
    lo = [floor(shift[j] + sum(min(0, u[j]) for u in gens)) for j in range(N)]
    hi = [ceil(shift[j] + sum(max(0, u[j]) for u in gens)) for j in range(N)]
    U = pi.matrix()
    out = []
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        lam = solve_rational(U, [xi - si for xi, si in zip(x, shift)])
        if lam is None:
            continue
        ok = all((0 < l <= 1) if f else (0 <= l < 1) for l, f in zip(lam, pi.open_flags))
        if ok:
            out.append((tuple(x), tuple(lam)))
    return out
