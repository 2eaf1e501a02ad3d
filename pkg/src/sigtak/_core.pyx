# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: exact integer arithmetic in 128-bit registers.

Mirror of sigtak._purecore with identical contracts.  The dispatcher
(sigtak._kernel) only routes a call here after checking that every
intermediate product fits a signed 128-bit integer, so no overflow
checks are needed in the loops.  All divisions by two act on even
operands, making C truncation equal to exact division.
"""

import numpy as np

from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef long long int128 "__int128"


def backend():
    return "compiled"


def grid_values(signs, int depth):
    """f(j/2^depth) * 2^depth for j = 0 .. 2^depth, as an int64 array."""
    cdef long long[::1] sg = np.ascontiguousarray(signs, dtype=np.int64)
    out = np.zeros((1 << depth) + 1, dtype=np.int64)
    cdef long long[::1] v = out
    cdef long long size = (<long long>1) << depth
    cdef long long stride = size
    cdef long long half, i, r
    cdef int k
    for k in range(depth):
        half = stride >> 1
        r = sg[k] * ((<long long>1) << (depth - k - 1))
        i = 0
        while i + stride <= size:
            v[i + half] = (v[i] + v[i + stride]) // 2 + r
            i += stride
        stride = half
    return out


cdef void _cover_visit(long long[::1] sg, int depth, int n, long long idx,
                       int128 va, int128 vb, int128 *lo_lhs, int128 *hi_lhs,
                       int128 q,
                       long long[::1] mn, long long[::1] md,
                       long long[::1] bmn, long long[::1] bmd,
                       list out) except *:
    cdef int128 a = va if va <= vb else vb
    cdef int128 b = vb if va <= vb else va
    if lo_lhs[n] < q * (a * md[n] + ((<int128>mn[n]) << (depth - n))):
        return
    if hi_lhs[n] > q * (b * bmd[n] + ((<int128>bmn[n]) << (depth - n))):
        return
    if n == depth:
        out.append(idx)
        return
    cdef int128 mid = (va + vb) / 2 + (<int128>sg[n]) * ((<int128>1) << (depth - n - 1))
    _cover_visit(sg, depth, n + 1, idx << 1, va, mid, lo_lhs, hi_lhs, q,
                 mn, md, bmn, bmd, out)
    _cover_visit(sg, depth, n + 1, (idx << 1) | 1, mid, vb, lo_lhs, hi_lhs, q,
                 mn, md, bmn, bmd, out)


def level_cover_leaves(signs, int depth, object y_num, object y_den,
                       m_num, m_den, big_m_num, big_m_den):
    """Sorted indices of depth-N cells whose range bound contains y."""
    cdef long long[::1] sg = np.ascontiguousarray(signs, dtype=np.int64)
    cdef long long[::1] mn = np.ascontiguousarray(m_num, dtype=np.int64)
    cdef long long[::1] md = np.ascontiguousarray(m_den, dtype=np.int64)
    cdef long long[::1] bmn = np.ascontiguousarray(big_m_num, dtype=np.int64)
    cdef long long[::1] bmd = np.ascontiguousarray(big_m_den, dtype=np.int64)
    cdef long long p = y_num
    cdef long long q = y_den
    cdef int128 shifted_p = (<int128>p) << depth
    cdef int128 *lo_lhs = <int128 *>malloc((depth + 1) * sizeof(int128))
    cdef int128 *hi_lhs = <int128 *>malloc((depth + 1) * sizeof(int128))
    if lo_lhs == NULL or hi_lhs == NULL:
        free(lo_lhs)
        free(hi_lhs)
        raise MemoryError()
    cdef int n
    for n in range(depth + 1):
        lo_lhs[n] = shifted_p * md[n]
        hi_lhs[n] = shifted_p * bmd[n]
    out: list = []
    try:
        _cover_visit(sg, depth, 0, 0, 0, 0, lo_lhs, hi_lhs, <int128>q,
                     mn, md, bmn, bmd, out)
    finally:
        free(lo_lhs)
        free(hi_lhs)
    return out


cdef void _principal_visit(long long[::1] sg, int two_m, int n, long long d,
                           long long va, long long vb,
                           long long[::1] orders, long long[::1] ybase,
                           long long *count):
    if n % 2 == 0 and d == 0:
        orders[count[0]] = n // 2
        ybase[count[0]] = va
        count[0] += 1
    if n == two_m:
        return
    cdef long long mid = (va + vb) // 2 + sg[n] * ((<long long>1) << (two_m - n - 1))
    cdef long long step = sg[n]
    if d + step >= 0:
        _principal_visit(sg, two_m, n + 1, d + step, va, mid, orders, ybase, count)
    if d - step >= 0:
        _principal_visit(sg, two_m, n + 1, d - step, mid, vb, orders, ybase, count)


def principal_bases(signs, int max_order):
    """(orders, base values * 4^max_order) of all principal humps of order <= max_order."""
    from math import comb

    cap = sum(comb(2 * m, m) // (m + 1) for m in range(max_order + 1))
    orders = np.empty(cap, dtype=np.int64)
    ybase = np.empty(cap, dtype=np.int64)
    cdef long long[::1] ov = orders
    cdef long long[::1] yv = ybase
    cdef long long[::1] sg = np.ascontiguousarray(signs, dtype=np.int64)
    cdef long long count = 0
    _principal_visit(sg, 2 * max_order, 0, 0, 0, 0, ov, yv, &count)
    if count != cap:
        raise RuntimeError("principal hump count mismatch (internal error)")
    return orders, ybase
