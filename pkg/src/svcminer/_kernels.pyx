# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting, scoring and percentile kernels.

Mirrors svcminer/_kernels_py.py. Keep the float expressions of the two
modules in sync: parity is asserted by tests and required for
backend-independent output.
"""

from libc.math cimport log, log2, sqrt
from libc.stdint cimport int64_t
from libc.stdlib cimport qsort

import numpy as np

OE = 0
MI = 1
LOCAL_MI = 2
Z_SCORE = 3
T_SCORE = 4
SIMPLE_LL = 5


cdef int _cmp_int64(const void *pa, const void *pb) noexcept nogil:
    cdef int64_t a = (<const int64_t *> pa)[0]
    cdef int64_t b = (<const int64_t *> pb)[0]
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


cdef int _cmp_double(const void *pa, const void *pb) noexcept nogil:
    cdef double a = (<const double *> pa)[0]
    cdef double b = (<const double *> pb)[0]
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


def count_pairs(a_ids, b_ids):
    """Joint and marginal counts over two parallel id sequences.

    Returns five parallel int64 arrays ordered by (a, b): a id, b id,
    joint count, marginal count of a, marginal count of b.
    """
    a_arr = np.ascontiguousarray(a_ids, dtype=np.int64)
    b_arr = np.ascontiguousarray(b_ids, dtype=np.int64)
    cdef int64_t[::1] a = a_arr
    cdef int64_t[::1] b = b_arr
    cdef Py_ssize_t n = a.shape[0]
    if b.shape[0] != n:
        raise ValueError("id sequences differ in length")
    if n == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy(), empty.copy(), empty.copy(), empty.copy()

    cdef Py_ssize_t i
    cdef int64_t amax = 0, bmax = 0
    for i in range(n):
        if a[i] < 0 or b[i] < 0:
            raise ValueError("ids must be non-negative")
        if a[i] > amax:
            amax = a[i]
        if b[i] > bmax:
            bmax = b[i]
    cdef int64_t width = bmax + 1
    if amax > (<int64_t> 0x7FFFFFFFFFFFFFFF) // width - 1:
        raise ValueError("id space too large for combined keys")

    a_marg_arr = np.zeros(amax + 1, dtype=np.int64)
    b_marg_arr = np.zeros(bmax + 1, dtype=np.int64)
    keys_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] a_marg = a_marg_arr
    cdef int64_t[::1] b_marg = b_marg_arr
    cdef int64_t[::1] keys = keys_arr
    for i in range(n):
        a_marg[a[i]] += 1
        b_marg[b[i]] += 1
        keys[i] = a[i] * width + b[i]
    qsort(&keys[0], n, sizeof(int64_t), _cmp_int64)

    cdef Py_ssize_t m = 1
    for i in range(1, n):
        if keys[i] != keys[i - 1]:
            m += 1
    ua_arr = np.empty(m, dtype=np.int64)
    ub_arr = np.empty(m, dtype=np.int64)
    o11_arr = np.empty(m, dtype=np.int64)
    r1_arr = np.empty(m, dtype=np.int64)
    c1_arr = np.empty(m, dtype=np.int64)
    cdef int64_t[::1] ua = ua_arr
    cdef int64_t[::1] ub = ub_arr
    cdef int64_t[::1] o11 = o11_arr
    cdef int64_t[::1] r1 = r1_arr
    cdef int64_t[::1] c1 = c1_arr

    cdef Py_ssize_t pos = 0
    cdef int64_t run = 1
    for i in range(1, n):
        if keys[i] == keys[i - 1]:
            run += 1
        else:
            ua[pos] = keys[i - 1] // width
            ub[pos] = keys[i - 1] % width
            o11[pos] = run
            pos += 1
            run = 1
    ua[pos] = keys[n - 1] // width
    ub[pos] = keys[n - 1] % width
    o11[pos] = run
    for i in range(m):
        r1[i] = a_marg[ua[i]]
        c1[i] = b_marg[ub[i]]
    return ua_arr, ub_arr, o11_arr, r1_arr, c1_arr


def score_many(o11, r1, c1, n, int measure):
    """Association scores for parallel count sequences sharing sample size n."""
    o_arr = np.ascontiguousarray(o11, dtype=np.float64)
    r_arr = np.ascontiguousarray(r1, dtype=np.float64)
    c_arr = np.ascontiguousarray(c1, dtype=np.float64)
    cdef double[::1] o = o_arr
    cdef double[::1] r = r_arr
    cdef double[::1] c = c_arr
    cdef Py_ssize_t m = o.shape[0]
    if r.shape[0] != m or c.shape[0] != m:
        raise ValueError("count sequences differ in length")
    if measure < 0 or measure > 5:
        raise ValueError(f"unknown measure code {measure}")
    cdef double nf = float(n)
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double of, e, v
    for i in range(m):
        of = o[i]
        e = r[i] * c[i] / nf
        if measure == 0:  # OE
            v = of / e
        elif measure == 1:  # MI
            v = log2(of / e)
        elif measure == 2:  # LOCAL_MI
            v = of * log2(of / e)
        elif measure == 3:  # Z_SCORE
            v = (of - e) / sqrt(e)
        elif measure == 4:  # T_SCORE
            v = (of - e) / sqrt(of)
        else:  # SIMPLE_LL
            v = 2.0 * (of * log(of / e) - (of - e))
        out[i] = v
    return out_arr


def cpr_many(scores):
    """Cumulative percentile rank: fraction of scores <= each score."""
    s_arr = np.ascontiguousarray(scores, dtype=np.float64)
    cdef double[::1] s = s_arr
    cdef Py_ssize_t n = s.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.float64)
    ordered_arr = s_arr.copy()
    cdef double[::1] ordered = ordered_arr
    qsort(&ordered[0], n, sizeof(double), _cmp_double)
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, lo, hi, mid
    cdef double v
    for i in range(n):
        v = s[i]
        lo = 0
        hi = n
        while lo < hi:  # upper bound, equivalent to bisect_right
            mid = (lo + hi) // 2
            if ordered[mid] <= v:
                lo = mid + 1
            else:
                hi = mid
        out[i] = (<double> lo) / (<double> n)
    return out_arr
