# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled enumeration kernels (int64).  Callers must rule out overflow;
see ``phiehrhart.kernels`` for the bound checks and the fallback."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t
from libcpp.vector cimport vector

cnp.import_array()


def fpp_enumerate(const int64_t[:, ::1] U, const int64_t[:, ::1] adj, int64_t det,
                  const int64_t[:, ::1] L, const int64_t[::1] diag,
                  const unsigned char[::1] open_flags):
    cdef Py_ssize_t n = U.shape[0]
    cdef int64_t D = det if det > 0 else -det
    cdef int64_t s = 1 if det > 0 else -1
    cdef Py_ssize_t total = D
    points_arr = np.empty((total, n), dtype=np.int64)
    nums_arr = np.empty((total, n), dtype=np.int64)
    cdef int64_t[:, ::1] points = points_arr
    cdef int64_t[:, ::1] nums = nums_arr
    cdef int64_t[::1] counter = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] x = np.zeros(n, dtype=np.int64)
    cdef Py_ssize_t row = 0, i, k, j
    cdef int64_t acc, m
    while True:
        for i in range(n):
            acc = 0
            for k in range(n):
                acc += L[i, k] * counter[k]
            x[i] = acc
        for i in range(n):
            acc = 0
            for k in range(n):
                acc += adj[i, k] * x[k]
            m = (s * acc) % D
            if m < 0:
                m += D
            if m == 0 and open_flags[i]:
                m = D
            nums[row, i] = m
        for j in range(n):
            acc = 0
            for i in range(n):
                acc += U[j, i] * nums[row, i]
            points[row, j] = acc // D
        row += 1
        i = 0
        while i < n:
            counter[i] += 1
            if counter[i] < diag[i]:
                break
            counter[i] = 0
            i += 1
        if i == n:
            break
    return points_arr[:row], nums_arr[:row]


def scan_halfspaces(const int64_t[:, ::1] A, const int64_t[::1] c,
                    const unsigned char[::1] strict,
                    const int64_t[::1] lo, const int64_t[::1] hi):
    cdef Py_ssize_t k = A.shape[0]
    cdef Py_ssize_t n = lo.shape[0]
    cdef Py_ssize_t r, j
    cdef vector[int64_t] out
    cdef bint ok
    cdef int64_t span
    for j in range(n):
        if lo[j] > hi[j]:
            return np.empty((0, n), dtype=np.int64)
    cdef int64_t[::1] x = np.array(lo, dtype=np.int64)
    cdef int64_t[::1] vals = np.empty(k, dtype=np.int64)
    for r in range(k):
        vals[r] = c[r]
        for j in range(n):
            vals[r] += A[r, j] * x[j]
    while True:
        ok = True
        for r in range(k):
            if strict[r]:
                if vals[r] <= 0:
                    ok = False
                    break
            elif vals[r] < 0:
                ok = False
                break
        if ok:
            for j in range(n):
                out.push_back(x[j])
        if n == 0:
            break
        j = n - 1
        while j >= 0:
            if x[j] < hi[j]:
                x[j] += 1
                for r in range(k):
                    vals[r] += A[r, j]
                break
            span = x[j] - lo[j]
            x[j] = lo[j]
            for r in range(k):
                vals[r] -= A[r, j] * span
            j -= 1
        if j < 0:
            break
    cdef Py_ssize_t count = out.size() // n if n else (1 if ok else 0)
    res = np.empty((count, n), dtype=np.int64)
    cdef int64_t[:, ::1] rv = res
    cdef Py_ssize_t idx = 0
    for r in range(count):
        for j in range(n):
            rv[r, j] = out[idx]
            idx += 1
    return res
