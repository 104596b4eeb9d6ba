import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from phiehrhart.lattice import (
    DependentGenerators,
    HalfOpenParallelepiped,
    det,
    matmul,
    naive_parallelepiped_points,
    parallelepiped_points,
    saturation_basis,
    snf,
    solve_rational,
)


def _check_snf(U):
    dec = snf(U)
    assert matmul(matmul(dec.L, dec.D), dec.R) == [list(r) for r in U]
    assert abs(det(dec.L)) == 1 and abs(det(dec.R)) == 1
    diag = [x for x in dec.diagonal if x]
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    return dec


def test_snf_examples():
    assert _check_snf([[1, 0], [0, 1]]).diagonal == [1, 1]
    assert _check_snf([[1, 1], [0, 2]]).diagonal == [1, 2]
    assert _check_snf([[2]]).diagonal == [2]


def test_parallelepiped_examples():
    cone = HalfOpenParallelepiped([(0, 0, 1), (1, 0, 1), (1, 1, 1)], [False, True, False])
    pts = parallelepiped_points(cone)
    assert [p for p, _ in pts] == [(1, 0, 1)]
    assert pts[0][1] == (0, 1, 0)
    unit = HalfOpenParallelepiped([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert [p for p, _ in parallelepiped_points(unit)] == [(0, 0, 0)]
    two = HalfOpenParallelepiped([(1, 0), (1, 2)])
    assert [p for p, _ in parallelepiped_points(two)] == [(0, 0), (1, 1)]


def test_solve_rational_examples():
    assert solve_rational([[1, 0], [0, 1]], [3, 5]) == [3, 5]
    assert solve_rational([[2, 0], [0, 2]], [1, 1]) == [Fraction(1, 2), Fraction(1, 2)]
    U = [[1, 1, 0], [0, 1, 0], [1, 1, 1]]
    assert solve_rational(U, [1, 0, 1]) == [1, 0, 0]
    assert solve_rational([[1], [1]], [1, 0]) is None


def test_dependent_generators():
    with pytest.raises(DependentGenerators):
        parallelepiped_points(HalfOpenParallelepiped([(1, 2), (2, 4)]))


def test_lower_rank_matches_naive():
    pi = HalfOpenParallelepiped([(2, 0, 2), (0, 3, 1)], [True, False])
    assert parallelepiped_points(pi) == naive_parallelepiped_points(pi)
    B, C = saturation_basis(pi.generators)
    for j, u in enumerate(pi.generators):
        assert tuple(sum(B[i][k] * C[k][j] for k in range(2)) for i in range(3)) == u


def test_shifted_matches_naive():
    pi = HalfOpenParallelepiped([(2, 1), (-1, 3)], [True, False])
    shift = (Fraction(1, 2), Fraction(-1, 3))
    assert parallelepiped_points(pi, shift) == naive_parallelepiped_points(pi, shift)


matrices = st.integers(1, 3).flatmap(
    lambda d: st.lists(st.lists(st.integers(-4, 4), min_size=d, max_size=d), min_size=d, max_size=d)
)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_snf_property(U):
    _check_snf(U)


@settings(max_examples=40, deadline=None)
@given(matrices, st.data())
def test_point_count_is_det(U, data):
    D = abs(det(U))
    if D == 0:
        return
    gens = [tuple(r) for r in U]
    flags = data.draw(st.lists(st.booleans(), min_size=len(U), max_size=len(U)))
    pi = HalfOpenParallelepiped(gens, flags)
    pts = parallelepiped_points(pi)
    assert len(pts) == D
    assert pts == naive_parallelepiped_points(pi)
    for p, lam in pts:
        assert all((0 < l <= 1) if f else (0 <= l < 1) for l, f in zip(lam, flags))
        assert all(sum(l * g[j] for l, g in zip(lam, gens)) == p[j] for j in range(len(p)))


def test_all_flag_patterns():
    gens = [(1, 2, 0), (0, 3, 1), (2, 0, 1)]
    D = abs(det([list(g) for g in gens]))
    for flags in itertools.product([False, True], repeat=3):
        assert len(parallelepiped_points(HalfOpenParallelepiped(gens, flags))) == D
