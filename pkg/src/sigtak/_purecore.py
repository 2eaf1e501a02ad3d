"""Pure-Python hot kernels, exact integer arithmetic throughout.

Selected by sigtak._kernel when the compiled extension is missing or when
operand sizes exceed its fixed-width budget.  All three kernels work on
values scaled to integers: f at a dyadic of depth n is an integer
multiple of 2^(-n), so scaling by 2^N makes every quantity exact in
(arbitrary-precision) integers.
"""

from __future__ import annotations

import numpy as np


def backend() -> str:
    return "pure"


def grid_values(signs, depth: int):
    """f(j/2^depth) * 2^depth for j = 0 .. 2^depth, as an int64 array.

    Level-by-level midpoint refinement: the value at the midpoint of a
    depth-k cell is the endpoint average plus r_k * 2^(-(k+1)).
    """
    v = np.zeros(2, dtype=np.int64)
    for k in range(depth):
        nxt = np.empty(2 * v.size - 1, dtype=np.int64)
        nxt[0::2] = v
        nxt[1::2] = (v[:-1] + v[1:]) // 2 + signs[k] * (1 << (depth - k - 1))
        v = nxt
    return v


def level_cover_leaves(signs, depth, y_num, y_den, m_num, m_den, big_m_num, big_m_den):
    """Sorted indices of depth-N cells whose range bound contains y = y_num/y_den.

    A cell at depth n with scaled endpoint values A, B (times 2^N) has
    range bound [min(A,B)/2^N + m_n/2^n, max(A,B)/2^N + M_n/2^n]; the
    containment test is cross-multiplied so everything stays integral.
    Ties retain the cell.
    """
    out = []
    shifted_p = y_num << depth
    lo_lhs = [shifted_p * m_den[n] for n in range(depth + 1)]
    hi_lhs = [shifted_p * big_m_den[n] for n in range(depth + 1)]

    def visit(n, idx, va, vb):
        a, b = (va, vb) if va <= vb else (vb, va)
        if lo_lhs[n] < y_den * (a * m_den[n] + (m_num[n] << (depth - n))):
            return  # y below the cell's lower bound
        if hi_lhs[n] > y_den * (b * big_m_den[n] + (big_m_num[n] << (depth - n))):
            return  # y above the cell's upper bound
        if n == depth:
            out.append(idx)
            return
        mid = (va + vb) // 2 + signs[n] * (1 << (depth - n - 1))
        visit(n + 1, idx << 1, va, mid)
        visit(n + 1, (idx << 1) | 1, mid, vb)

    visit(0, 0, 0, 0)
    return out


def principal_bases(signs, max_order: int):
    """(orders, base values * 4^max_order) of all principal humps of order <= max_order.

    Depth-first walk over digit prefixes with nonnegative walk values;
    every even-depth return to zero is a principal hump base.  Endpoint
    values ride along so each base's exact height costs O(1).
    """
    two_m = 2 * max_order
    orders: list[int] = []
    ybase: list[int] = []

    def visit(n, d, va, vb):
        if n % 2 == 0 and d == 0:
            orders.append(n // 2)
            ybase.append(va)
        if n == two_m:
            return
        mid = (va + vb) // 2 + signs[n] * (1 << (two_m - n - 1))
        step = signs[n]
        if d + step >= 0:
            visit(n + 1, d + step, va, mid)
        if d - step >= 0:
            visit(n + 1, d - step, mid, vb)

    visit(0, 0, 0, 0)
    return np.asarray(orders, dtype=np.int64), np.asarray(ybase, dtype=np.int64)
