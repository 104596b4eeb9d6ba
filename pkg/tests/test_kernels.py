import random

import pytest

from phiehrhart import _kernels_py, kernels
from phiehrhart.lattice import adjugate, det, snf

compiled = pytest.mark.skipif(kernels.BACKEND != "compiled", reason="extension not built")


def _fpp_args(U, flags):
    adj, d = adjugate(U)
    dec = snf(U)
    return U, adj, d, dec.L, dec.diagonal, flags


@compiled
def test_fpp_backends_agree():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 4)
        U = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        if det(U) == 0:
            continue
        args = _fpp_args(U, [rng.random() < 0.5 for _ in range(n)])
        a = kernels.fpp_enumerate(*args, backend="compiled")
        b = kernels.fpp_enumerate(*args, backend="python")
        assert a == b


@compiled
def test_scan_backends_agree():
    rng = random.Random(12)
    for _ in range(40):
        n = rng.randint(0, 3)
        k = rng.randint(0, 4)
        A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(k)]
        c = [rng.randint(-5, 5) for _ in range(k)]
        strict = [rng.random() < 0.3 for _ in range(k)]
        lo = [rng.randint(-4, 0) for _ in range(n)]
        hi = [rng.randint(0, 4) for _ in range(n)]
        assert kernels.scan_halfspaces(A, c, strict, lo, hi, backend="compiled") == \
            kernels.scan_halfspaces(A, c, strict, lo, hi, backend="python")


def test_scan_reference():
    # x, y in [0,3] with x + y <= 2 and x > 0
    pts = _kernels_py.scan_halfspaces([[-1, -1], [1, 0]], [2, 0], [False, True], [0, 0], [3, 3])
    assert [tuple(p) for p in pts] == [(1, 0), (1, 1), (2, 0)]


def test_scan_empty_box():
    assert kernels.scan_halfspaces([[1]], [0], [False], [2], [1]) == []


def test_overflow_falls_back():
    big = 1 << 40
    U = [[big, 0], [0, big]]
    pts, nums = kernels.fpp_enumerate(U, [[big, 0], [0, big]], big * big, [[1, 0], [0, 1]], [1, 1], [False, False])
    assert pts == [(0, 0)]
    if kernels.BACKEND == "compiled":
        with pytest.raises(RuntimeError):
            kernels.fpp_enumerate(U, [[big, 0], [0, big]], big * big, [[1, 0], [0, 1]], [1, 1],
                                  [False, False], backend="compiled")
