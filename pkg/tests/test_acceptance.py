"""Acceptance gate.  Every comparison is exact; one PASS/FAIL line per
criterion is printed in the terminal summary (see conftest)."""

import itertools
import random
import sys
from fractions import Fraction

import pytest

from phiehrhart import oracle
from phiehrhart.equivariant import (
    GroupAction,
    aggregate_orbits,
    equivariant_coeff,
    orbit_decomposition,
    verify_closed_form,
)
from phiehrhart.geometry import HalfOpenCone, HalfOpenSimplex, Polytope, half_open_decomposition
from phiehrhart.groups import AbelianGroup, LatticeHomomorphism
from phiehrhart.lattice import HalfOpenParallelepiped, det, parallelepiped_points
from phiehrhart.rings import ZZ, CoefficientRing, GroupRingElement
from phiehrhart.series import (
    GroupRingPolynomial,
    RationalGroupSeries,
    ehrhart_series,
    hstar,
    reciprocity_check,
    shifted_dilation_series,
    simplify_best_effort,
)
from phiehrhart.transforms import (
    GroupLaurentPolynomial,
    MultivariateRationalFunction,
    Weight,
    brion_check,
    cone_transform,
    weighted_ehrhart_series,
)

from conftest import C3, SQUARE, example12_series

N_CONES = 50
N_SIMPLICES = 100
N_POLYGONS, N_POLYTOPES3 = 25, 10
N_WEIGHTED = 50
N_RATIONAL = 20

Z2 = CoefficientRing(2)
Z3 = CoefficientRing(3)


def _random_phi(rng, G, d):
    def rand_elt():
        return tuple(rng.randrange(f) if f else rng.randint(-2, 2) for f in G.invariant_factors)

    return LatticeHomomorphism(G, [rand_elt() for _ in range(d)])


def _random_full_rank(rng, d, lo, hi):
    while True:
        U = [tuple(rng.randint(lo, hi) for _ in range(d)) for _ in range(d)]
        if det([list(u) for u in U]) != 0:
            return U


def _random_polytope(rng, d, npts, hi=4):
    while True:
        P = Polytope([tuple(rng.randint(0, hi) for _ in range(d)) for _ in range(npts)])
        if P.is_full_dimensional:
            return P


def _laurent(ring, group, n, mapping):
    return GroupLaurentPolynomial(ring, group, n, [((a, g), c) for a, x in mapping.items() for g, c in x.items()])


def _window(F: GroupLaurentPolynomial, W: int) -> GroupLaurentPolynomial:
    return GroupLaurentPolynomial(
        F.ring, F.group, F.nvars,
        [((a, g), c) for (a, g), c in F.raw_items() if max(map(abs, a), default=0) <= W],
    )


# 1 ----------------------------------------------------------------------------


def test_criterion_01_example_square_c3():
    phi = LatticeHomomorphism(C3, [(1,), (1,)])
    P = Polytope(SQUARE)
    S = ehrhart_series(P, phi)
    assert S.equals(example12_series())
    coeffs = S.expand(20)
    for n in range(21):
        assert coeffs[n] == oracle.brute_ehrhart(P, phi, n), n
    w = lambda k: GroupRingElement.monomial(ZZ, C3, (k,))  # noqa: E731
    assert coeffs[1] == w(0) + w(1) * 2 + w(2)
    assert coeffs[2] == (w(0) + w(1) + w(2)) * 3


# 2 ----------------------------------------------------------------------------


def test_criterion_02_cancellation_mod_2():
    phi = LatticeHomomorphism(C3, [(1,), (1,)])
    S = ehrhart_series(Polytope(SQUARE), phi, Z2)
    T = simplify_best_effort(S)
    # over Z/2, 1 - g t == 1 + g t
    assert T.numerator == GroupRingPolynomial.one(Z2, C3)
    assert T.denominator == {((0,), 1): 1, ((2,), 1): 1}
    assert T.expand(20) == S.expand(20)
    assert T.expand(20) == [oracle.brute_ehrhart(Polytope(SQUARE), phi, n, Z2) for n in range(21)]


# 3 ----------------------------------------------------------------------------


def test_criterion_03_cone_identity_truncated():
    rng = random.Random(3)
    groups = [AbelianGroup.trivial(), AbelianGroup.cyclic(3), AbelianGroup.free(1), AbelianGroup((2, 4))]
    for trial in range(N_CONES):
        d = rng.randint(1, 3)
        U = _random_full_rank(rng, d, -4, 4)
        flags = [rng.random() < 0.5 for _ in range(d)]
        apex = tuple(rng.randint(-1, 1) for _ in range(d))
        G = groups[trial % len(groups)]
        phi = _random_phi(rng, G, d)
        cone = HalfOpenCone(apex, U, flags)

        pi = HalfOpenParallelepiped(U, flags)
        pi_sum = GroupLaurentPolynomial(
            ZZ, G, d,
            [((tuple(a + b for a, b in zip(apex, p)), phi(tuple(a + b for a, b in zip(apex, p)))), 1)
             for p, _ in parallelepiped_points(pi)],
        )
        # rational function agrees with the raw Pi sum over the raw factors
        raw = MultivariateRationalFunction(pi_sum, [((phi(u), u), 1) for u in U])
        assert cone_transform(cone, phi).equals(raw)

        M = sum(max(map(abs, u)) for u in U)
        B = 2 * M + max(map(abs, apex)) + 1
        trunc = oracle.brute_transform(cone, phi, [-B] * d, [B] * d)
        sigma = _laurent(ZZ, G, d, trunc)
        for u in U:
            sigma = sigma.times_factor(phi(u), u)
        W = B - M
        assert _window(sigma, W) == _window(pi_sum, W), (U, flags, apex)
        assert _window(pi_sum, W) == pi_sum


# 4 ----------------------------------------------------------------------------


def test_criterion_04_reciprocity():
    rng = random.Random(4)
    groups = [AbelianGroup.trivial(), AbelianGroup.cyclic(2), AbelianGroup.cyclic(5), AbelianGroup.free(1)]
    rings = [ZZ, Z2, Z3]
    done = 0
    while done < N_SIMPLICES:
        d = rng.randint(1, 3)
        k = rng.randint(1, d)
        verts = [tuple(rng.randint(0, 4) for _ in range(d)) for _ in range(k + 1)]
        try:
            s = HalfOpenSimplex(verts, [rng.random() < 0.4 for _ in verts])
        except ValueError:
            continue
        G = groups[done % 4]
        R = rings[(done // 4) % 3]
        rep = reciprocity_check(s, _random_phi(rng, G, d), R)
        assert rep.hstar_equal and rep.series_equal, (verts, s.removed, G, R)
        done += 1
    T = AbelianGroup.trivial()
    num, _ = hstar(HalfOpenSimplex([(0,), (1,)], [True, True]), LatticeHomomorphism.trivial(1))
    assert num == GroupRingPolynomial.monomial(ZZ, T, (), 2)


# 5 ----------------------------------------------------------------------------


def test_criterion_05_brion():
    triv1 = LatticeHomomorphism.trivial(1)
    assert brion_check(Polytope([(0,), (2,)]), triv1).equal
    assert brion_check(Polytope(SQUARE), LatticeHomomorphism(C3, [(1,), (1,)])).equal
    rng = random.Random(5)
    for i in range(N_POLYGONS):
        P = _random_polytope(rng, 2, rng.randint(3, 6))
        phi = LatticeHomomorphism.trivial(2) if i % 2 else _random_phi(rng, C3, 2)
        assert brion_check(P, phi).equal, P
    for i in range(N_POLYTOPES3):
        P = _random_polytope(rng, 3, rng.randint(4, 6), hi=3)
        phi = LatticeHomomorphism.trivial(3) if i % 2 else _random_phi(rng, C3, 3)
        assert brion_check(P, phi).equal, P


# 6 ----------------------------------------------------------------------------


def _displayed_weighted(G, a, b):
    """t a (1 - a a b t^2) / ((1-t)(1-a t)^2 (1-b t)^2) with a = phi(e1), b = phi(e1+e2)."""
    R = ZZ
    m = GroupRingElement.monomial
    z = GroupRingElement.zero(R, G)
    aab = G.mul(G.mul(a, a), b)
    num = GroupRingPolynomial(R, G, [z, m(R, G, a), z, m(R, G, aab, -1)])
    return RationalGroupSeries(num, {(G.identity, 1): 1, (a, 1): 2, (b, 1): 2})


def test_criterion_06_weighted(delta45):
    x1 = Weight([(1, (1, 0))])
    # universal case: free group, phi(e_i) = e_i
    F2 = AbelianGroup.free(2)
    phi = LatticeHomomorphism(F2, [(1, 0), (0, 1)])
    S = weighted_ehrhart_series(delta45, phi, x1)
    assert S.equals(_displayed_weighted(F2, (1, 0), (1, 1)))
    assert S.numerator == _displayed_weighted(F2, (1, 0), (1, 1)).numerator
    for n, c in enumerate(S.expand(15)):
        assert c == oracle.brute_weighted(delta45, phi, x1, n), n
    # the C3 specialization
    phi3 = LatticeHomomorphism(C3, [(1,), (1,)])
    S3 = weighted_ehrhart_series(delta45, phi3, x1)
    assert S3.equals(_displayed_weighted(C3, (1,), (2,)))

    rng = random.Random(6)
    for i in range(N_WEIGHTED):
        d = rng.randint(1, 2)
        P = _random_polytope(rng, d, rng.randint(d + 1, 4), hi=3)
        m = rng.randint(0, 2)
        mons = [(rng.randint(-3, 3) or 1, tuple(rng.choice([c for c in itertools.product(range(m + 1), repeat=d)
                                                              if sum(c) == m])))]
        mons += [(rng.randint(-3, 3), tuple(rng.randint(0, 1) for _ in range(d))) for _ in range(2)]
        w = Weight([(c, a) for c, a in mons if sum(a) <= m])
        phi = _random_phi(rng, C3, d) if i % 2 else LatticeHomomorphism.trivial(d)
        S = weighted_ehrhart_series(P, phi, w)
        # the bound divides prod_i (1 - phi(v_i) t)^(m+1) piecewise, so a
        # repeated phi-value may appear once per vertex carrying it
        bound = {}
        for s in half_open_decomposition(P):
            vals = [phi(tuple(int(c) for c in v)) for v in s.vertices]
            for g in vals:
                bound[g] = max(bound.get(g, 0), (w.degree + 1) * vals.count(g))
        for (g, p), mult in S.denominator.items():
            assert p == 1 and mult <= bound.get(g, 0), (P, w.monomials, S.denominator)
        for n, c in enumerate(S.expand(3)):
            assert c == oracle.brute_weighted(P, phi, w, n)


# 7 ----------------------------------------------------------------------------


def test_criterion_07_shifted_dilations():
    rng = random.Random(7)
    T = AbelianGroup.trivial()
    done = 0
    while done < N_RATIONAL:
        d = rng.randint(1, 2)
        q = rng.randint(1, 4)
        pts = [tuple(Fraction(rng.randint(0, 2 * q), q) for _ in range(d)) for _ in range(rng.randint(d + 1, 4))]
        P = Polytope(pts)
        if not P.is_full_dimensional:
            continue
        v = tuple(Fraction(rng.randint(-q, q), q) for _ in range(d))
        S = shifted_dilation_series(P, v, q)
        assert S.denominator == {((), q): d + 1}
        for c in S.numerator.coeffs:
            assert set(c.support()) <= {()} and c.coeff(()) >= 0
        for n, c in enumerate(S.expand(12)):
            assert c.coeff(()) == oracle.shifted_count(P, v, n), (pts, v, q, n)
        done += 1


# 8 ----------------------------------------------------------------------------


def test_criterion_08_equivariant_square():
    P = Polytope(SQUARE)
    phi = LatticeHomomorphism(C3, [(1,), (1,)])
    H = GroupAction.generated_by([[[0, 1], [1, 0]]])
    assert len(H.classes) == 2
    one = GroupRingElement.one(ZZ, C3)
    reflection = RationalGroupSeries(GroupRingPolynomial(ZZ, C3, [one]), {((0,), 1): 1, ((2,), 1): 1})
    # the epsilon -> -1 substitution, done by hand: (1 - w t) cancels
    eps_form = RationalGroupSeries(
        GroupRingPolynomial(ZZ, C3, [one, GroupRingElement.monomial(ZZ, C3, (1,), -1)]),
        {((0,), 1): 1, ((1,), 1): 1, ((2,), 1): 1},
    )
    assert eps_form.equals(reflection)
    assert ehrhart_series(P, phi).equals(example12_series())
    rep = verify_closed_form(P, phi, H, [example12_series(), reflection], 12)
    assert rep.equal, rep.mismatches
    for n in range(13):
        cf = equivariant_coeff(P, phi, H, n)
        assert aggregate_orbits(orbit_decomposition(P, phi, H, n), phi, H) == cf
        assert cf[0] == oracle.brute_ehrhart(P, phi, n)


# 9 ----------------------------------------------------------------------------


def test_criterion_09_structure():
    rng = random.Random(9)
    for _ in range(12):
        d = rng.randint(1, 3)
        P = _random_polytope(rng, d, rng.randint(d + 1, 5), hi=3)
        pieces = half_open_decomposition(P)
        for n in range(6):
            union = [a for s in pieces for a in oracle.enumerate(s, n).points]
            assert len(union) == len(set(union))
            assert sorted(union) == list(oracle.enumerate(P, n).points)

    for _ in range(15):
        d = rng.randint(1, 3)
        U = _random_full_rank(rng, d, -3, 3)
        D = abs(det([list(u) for u in U]))
        for flags in itertools.product([False, True], repeat=d):
            assert len(parallelepiped_points(HalfOpenParallelepiped(U, flags))) == D

    differing = 0
    for _ in range(10):
        d = rng.randint(2, 3)
        P = _random_polytope(rng, d, rng.randint(d + 2, 6), hi=3)
        Q = Polytope(list(reversed(P.vertices)))
        a, b = half_open_decomposition(P), half_open_decomposition(Q)
        if {frozenset(s.vertices) for s in a} != {frozenset(s.vertices) for s in b}:
            differing += 1
        phi = _random_phi(rng, C3, d)
        assert ehrhart_series(a, phi).expand(20) == ehrhart_series(b, phi).expand(20)
    assert differing > 0
    # the two diagonals of the square
    phi = LatticeHomomorphism(C3, [(1,), (1,)])
    one = [HalfOpenSimplex([(0, 0), (1, 0), (1, 1)]), HalfOpenSimplex([(0, 0), (1, 1), (0, 1)], [False, False, True])]
    two = [HalfOpenSimplex([(1, 0), (0, 1), (0, 0)]), HalfOpenSimplex([(1, 0), (0, 1), (1, 1)], [False, False, True])]
    assert ehrhart_series(one, phi).expand(20) == ehrhart_series(two, phi).expand(20)


# 10 ---------------------------------------------------------------------------


def test_criterion_10_scale():
    # worked examples are desk scale; property criteria carry the general
    # weight, so their sample sizes must not drop below the stated minimums
    assert N_CONES >= 50 and N_SIMPLICES >= 100
    assert N_POLYGONS >= 25 and N_POLYTOPES3 >= 10
    assert N_WEIGHTED >= 50 and N_RATIONAL >= 20


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
