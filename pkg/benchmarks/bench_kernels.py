"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

from phiehrhart import kernels
from phiehrhart.lattice import adjugate, snf


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def fpp_case():
    # about 30k parallelepiped points (|det U|)
    U = [[2, 1, 0, 3], [0, 15, 2, 1], [1, 0, 77, 4], [0, 2, 1, 13]]
    adj, d = adjugate(U)
    dec = snf(U)
    flags = [False, True, False, True]
    return abs(d), lambda backend: kernels.fpp_enumerate(U, adj, d, dec.L, dec.diagonal, flags, backend=backend)


def scan_case():
    # lattice points of a dilated simplex-like region in a 3-d box
    A = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-2, -3, -5]]
    c = [0, 0, 0, 300]
    strict = [False, True, False, False]
    lo, hi = [-5, -5, -5], [160, 110, 70]
    size = 166 * 116 * 76
    return size, lambda backend: kernels.scan_halfspaces(A, c, strict, lo, hi, backend=backend)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.BACKEND != "compiled":
        print("compiled extension not available; only the Python backend can run")
    print(f"{'kernel':<22}{'work':>10}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for name, (work, fn) in [("fpp_enumerate", fpp_case()), ("scan_halfspaces", scan_case())]:
        tp, outp = _best(lambda: fn("python"), args.repeat)
        if kernels.BACKEND == "compiled":
            tc, outc = _best(lambda: fn("compiled"), args.repeat)
            assert outc == outp, f"{name}: backends disagree"
            print(f"{name:<22}{work:>10}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
        else:
            print(f"{name:<22}{work:>10}{tp:>12.4f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
