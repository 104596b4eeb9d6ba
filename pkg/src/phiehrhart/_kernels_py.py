"""Pure-Python versions of the enumeration kernels.

Same contracts as the compiled ``_kernels`` module, on plain lists of
Python ints (so no overflow is possible here).
"""


def fpp_enumerate(U, adj, det, L, diag, open_flags):
    """Lattice points of the half-open parallelepiped spanned by the columns
    of the square matrix ``U``.

    ``adj``/``det`` are the adjugate and determinant of ``U``; ``L``/``diag``
    come from its Smith form ``U = L D R``, so the vectors ``L c`` with
    ``0 <= c_i < diag_i`` are coset representatives of ``Z^N / U Z^N``.

    Returns ``(points, numerators)``: the coordinates of each point in the
    generator basis are ``numerators / |det|``.
    """
    n = len(U)
    D = abs(det)
    s = 1 if det > 0 else -1
    points, numerators = [], []
    counter = [0] * n
    while True:
        x = [sum(L[i][k] * counter[k] for k in range(n)) for i in range(n)]
        r = []
        for i in range(n):
            m = (s * sum(adj[i][k] * x[k] for k in range(n))) % D
            if m == 0 and open_flags[i]:
                m = D
            r.append(m)
        points.append(tuple(sum(U[j][i] * r[i] for i in range(n)) // D for j in range(n)))
        numerators.append(tuple(r))
        i = 0
        while i < n:
            counter[i] += 1
            if counter[i] < diag[i]:
                break
            counter[i] = 0
            i += 1
        if i == n:
            return points, numerators


def scan_halfspaces(A, c, strict, lo, hi):
    """Integer points ``x`` with ``lo <= x <= hi`` and, for every row ``k``,
    ``A[k].x + c[k] >= 0`` (``> 0`` when ``strict[k]``)."""
    n = len(lo)
    k = len(A)
    if n == 0:
        ok = all((ck > 0) if sk else (ck >= 0) for ck, sk in zip(c, strict))
        return [()] if ok else []
    if any(l > h for l, h in zip(lo, hi)):
        return []
    x = list(lo)
    # running values of A x + c, updated incrementally as the odometer turns
    vals = [c[r] + sum(A[r][j] * x[j] for j in range(n)) for r in range(k)]
    out = []
    while True:
        if all((v > 0) if st else (v >= 0) for v, st in zip(vals, strict)):
            out.append(tuple(x))
        j = n - 1
        while j >= 0:
            if x[j] < hi[j]:
                x[j] += 1
                for r in range(k):
                    vals[r] += A[r][j]
                break
            span = x[j] - lo[j]
            x[j] = lo[j]
            for r in range(k):
                vals[r] -= A[r][j] * span
            j -= 1
        if j < 0:
            return out
