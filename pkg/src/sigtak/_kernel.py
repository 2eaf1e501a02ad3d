"""Backend selection for the hot kernels.

The compiled extension computes in fixed 128-bit integers; any call whose
operands could overflow that budget is routed to the arbitrary-precision
pure backend instead, so results never depend on which backend is built.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import _purecore

try:
    from . import _core
except ImportError:
    _core = None

BACKEND = "compiled" if _core is not None else "pure"


def backend() -> str:
    return BACKEND


def grid_values(signs, depth: int):
    """Exact scaled grid f(j/2^depth) * 2^depth; int64 result either way."""
    if depth > 60:
        raise OverflowError("grid depth exceeds the int64 value budget")
    if _core is not None:
        return _core.grid_values(signs, depth)
    return _purecore.grid_values(signs, depth)


_INT64_LIMIT = 1 << 62


def _cover_args(y: Fraction, lows, highs):
    m_num = [f.numerator for f in lows]
    m_den = [f.denominator for f in lows]
    big_m_num = [f.numerator for f in highs]
    big_m_den = [f.denominator for f in highs]
    return y.numerator, y.denominator, m_num, m_den, big_m_num, big_m_den


def _fits_int128(p, q, depth, *tables) -> bool:
    entries = [v for t in tables for v in t] + [p, q]
    if any(abs(v) >= _INT64_LIMIT for v in entries):
        return False
    dmax = max(abs(v).bit_length() for t in tables for v in t)
    return max(abs(p).bit_length(), q.bit_length()) + depth + dmax + 3 <= 126


def level_cover_leaves(signs, depth: int, y: Fraction, lows, highs):
    """Retained depth-N leaf indices for target y, given per-depth range tables.

    lows[n] / highs[n] are the exact min / max of the depth-n shifted
    function, as Fractions.
    """
    p, q, m_num, m_den, big_m_num, big_m_den = _cover_args(y, lows, highs)
    if _core is not None and _fits_int128(p, q, depth, m_num, m_den, big_m_num, big_m_den):
        return _core.level_cover_leaves(
            np.asarray(signs, dtype=np.int64), depth, p, q,
            m_num, m_den, big_m_num, big_m_den,
        )
    return _purecore.level_cover_leaves(
        list(signs), depth, p, q, m_num, m_den, big_m_num, big_m_den
    )


def principal_bases(signs, max_order: int):
    """(orders, base heights * 4^max_order) for principal humps up to max_order."""
    if max_order > 30:
        raise OverflowError("principal order exceeds the int64 value budget")
    if _core is not None:
        return _core.principal_bases(np.asarray(signs, dtype=np.int64), max_order)
    return _purecore.principal_bases(list(signs), max_order)
