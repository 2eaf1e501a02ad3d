"""Humps of the graph: enumeration, Catalan counts, exact y-projections.

A balanced word of length 2m marks a dyadic cell over which the graph is
a 4^(-m)-scaled copy of the graph of the shifted sign sequence.  Counting
humps is lattice-path combinatorics: binom(2m, m) humps of order m, C_m
of them principal (walk never negative).
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _kernel
from .dyadics import BinaryWord, DyadicRational, principal_word
from .errors import BudgetError
from .evaluate import Enclosure
from .signs import SignSequence, extrema, shift

__all__ = [
    "Hump",
    "TruncatedHump",
    "enumerate_humps",
    "catalan",
    "catalan_series",
    "hump_projection",
    "truncated_projection",
    "pair_with_principal",
    "coverage_of_first_generation",
    "first_generation_bases",
    "principal_projection_table",
    "FULL_ORDER_BUDGET",
    "PRINCIPAL_ORDER_BUDGET",
]

# Full enumeration grows as binom(2m, m) ~ 4^m, principal as C_m; defaults
# keep both desk-scale.
FULL_ORDER_BUDGET = 8
PRINCIPAL_ORDER_BUDGET = 12


@dataclass(frozen=True)
class Hump:
    """Balanced base word plus the exact data of the graph piece above it."""

    base: BinaryWord
    order: int
    generation: int
    y_base: Fraction
    principal: bool
    shape: SignSequence
    source: SignSequence

    def interval(self) -> tuple[DyadicRational, DyadicRational]:
        lo = self.base.value()
        return lo, lo + DyadicRational(1, 2 * self.order)

    def csv_row(self) -> list[str]:
        proj = hump_projection(self)
        return [
            str(self.base),
            str(self.order),
            str(self.generation),
            "1" if self.principal else "0",
            str(self.y_base),
            str(proj.lo),
            str(proj.hi),
        ]


@dataclass(frozen=True)
class TruncatedHump:
    """A hump minus its next-generation sub-humps; projection width (1/2) 4^(-m)."""

    hump: Hump
    y_projection: Enclosure


def catalan(m: int) -> int:
    if m < 0:
        raise ValueError("order must be nonnegative")
    return math.comb(2 * m, m) // (m + 1)


def catalan_series(max_order: int, exact_cutoff: int = 1000):
    """sum_(m<=M) C_m 4^(-m): exact Fraction up to the cutoff, float64 beyond.

    The partial sums increase to 2; the tail decays like 1/sqrt(M), so
    float64 summation is accurate far beyond any exact-arithmetic budget.
    """
    if max_order <= exact_cutoff:
        num = sum(catalan(m) * 4 ** (max_order - m) for m in range(max_order + 1))
        return Fraction(num, 4**max_order)
    total = 0.0
    term = 1.0
    for m in range(max_order + 1):
        total += term
        term *= (2 * m + 1) / (2.0 * (m + 2))  # C_(m+1)/(4 C_m)
    return total


def enumerate_humps(
    seq: SignSequence,
    max_order: int,
    only_principal: bool = False,
    generation: int | None = None,
    budget: int | None = None,
) -> list[Hump]:
    """All humps of order <= max_order, sorted by (order, base value).

    Depth-first enumeration over digit prefixes, pruned at negative walk
    values in principal mode; endpoint heights ride along as scaled
    integers so each base's exact height is O(1).
    """
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    if budget is None:
        budget = PRINCIPAL_ORDER_BUDGET if only_principal else FULL_ORDER_BUDGET
    if max_order > budget:
        raise BudgetError(
            f"max_order {max_order} exceeds the enumeration budget {budget}"
        )
    two_m = 2 * max_order
    scale = 4**max_order
    signs = seq.signs(two_m)
    out: list[Hump] = []
    bits: list[int] = []

    def visit(n: int, d: int, zeros: int, nonneg: bool, va: int, vb: int):
        if n % 2 == 0 and d == 0:
            if generation is None or zeros == generation:
                out.append(
                    Hump(
                        base=BinaryWord(tuple(bits)),
                        order=n // 2,
                        generation=zeros,
                        y_base=Fraction(va, scale),
                        principal=nonneg,
                        shape=shift(seq, n),
                        source=seq,
                    )
                )
        if n == two_m:
            return
        mid = (va + vb) // 2 + signs[n] * (1 << (two_m - n - 1))
        for bit, (lo, hi) in ((0, (va, mid)), (1, (mid, vb))):
            step = signs[n] * (1 if bit == 0 else -1)
            nd = d + step
            if only_principal and nd < 0:
                continue
            bits.append(bit)
            visit(n + 1, nd, zeros + (nd == 0), nonneg and nd >= 0, lo, hi)
            bits.pop()

    visit(0, 0, 0, True, 0, 0)
    out.sort(key=lambda h: (h.order, h.base.value().as_fraction))
    return out


def hump_projection(h: Hump) -> Enclosure:
    """Exact y-projection: base height plus the scaled range of the shape."""
    ext = extrema(h.shape)
    scale = Fraction(1, 4**h.order)
    return Enclosure(h.y_base + scale * ext.min_value, h.y_base + scale * ext.max_value)


def truncated_projection(h: Hump) -> TruncatedHump:
    """Projection of the truncated hump: anchored at the base height and
    extending (1/2) 4^(-m) toward the sign of the shape's first term."""
    w = Fraction(1, 2 * 4**h.order)
    if h.shape.sign_at(0) > 0:
        enc = Enclosure(h.y_base, h.y_base + w)
    else:
        enc = Enclosure(h.y_base - w, h.y_base)
    return TruncatedHump(h, enc)


def pair_with_principal(h: Hump, principal_pool: list[Hump]) -> Hump:
    """The unique principal hump whose walk is |D_j(h.base)| pointwise."""
    target = principal_word(h.source, h.base)
    for cand in principal_pool:
        if cand.base.bits == target.bits:
            return cand
    raise ValueError("principal_pool must contain all principal humps of the order")


def coverage_of_first_generation(seq: SignSequence, max_order: int) -> Fraction:
    """Total length of first-generation base intervals of order <= M.

    There are 2 C_(m-1) first-generation bases of order m (walks that
    first return to zero at step 2m), independent of the sign sequence,
    each carrying an interval of length 4^(-m).  The total increases to 1.
    """
    return sum(
        (Fraction(2 * catalan(m - 1), 4**m) for m in range(1, max_order + 1)),
        Fraction(0),
    )


def first_generation_bases(seq: SignSequence, max_order: int) -> list[BinaryWord]:
    """Balanced words whose walk first returns to zero at their full depth."""
    signs = seq.signs(2 * max_order)
    out: list[BinaryWord] = []
    bits: list[int] = []

    def visit(n: int, d: int):
        if n > 0 and d == 0:
            out.append(BinaryWord(tuple(bits)))
            return  # deeper returns under this prefix have generation >= 2
        if n == 2 * max_order:
            return
        for bit in (0, 1):
            bits.append(bit)
            visit(n + 1, d + signs[n] * (1 if bit == 0 else -1))
            bits.pop()

    visit(0, 0)
    return out


@lru_cache(maxsize=8)
def principal_projection_table(
    seq: SignSequence, max_order: int
) -> tuple[list[int], list[int], int]:
    """(sorted lows, sorted highs, scale_log2) of truncated principal projections.

    Endpoints are integers at scale 2^(2M+1); interval-stabbing queries
    for a target y then reduce to two bisections:
    count = #(lo <= y) - #(hi < y).
    """
    orders, ybase = _kernel.principal_bases(seq.signs(2 * max_order), max_order)
    scale_log = 2 * max_order + 1
    lows: list[int] = []
    highs: list[int] = []
    for m, y2 in zip(orders.tolist(), (ybase * 2).tolist()):
        w = 4 ** (max_order - m)  # (1/2) 4^(-m) at scale 2^(2M+1)
        if seq.sign_at(2 * m) > 0:
            lo = y2
        else:
            lo = y2 - w
        lows.append(lo)
        highs.append(lo + w)
    lows.sort()
    highs.sort()
    return lows, highs, scale_log


def projection_count(table: tuple[list[int], list[int], int], y: Fraction) -> tuple[int, bool]:
    """(number of truncated principal projections containing y, boundary hit)."""
    lows, highs, scale_log = table
    ys = y * 2**scale_log
    n_lo = bisect_right(lows, ys)
    n_hi = bisect_left(highs, ys)
    boundary = (n_lo > 0 and lows[n_lo - 1] == ys) or (
        n_hi < len(highs) and highs[n_hi] == ys
    )
    return n_lo - n_hi, boundary
