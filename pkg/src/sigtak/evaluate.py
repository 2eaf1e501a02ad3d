"""Evaluation of f_r: exact at dyadic points, enclosed elsewhere.

The key identity behind every bound here is the depth-n tail split
f(x) = f_n(x) + 2^(-n) * g(frac(2^n x)) with g the function of the
shifted sign sequence, so exact extrema of shifted sequences turn partial
sums into certified enclosures and interval range bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dyadics import BinaryWord, DyadicRational, walk
from .errors import DomainError
from .signs import SignSequence, extrema, shift

__all__ = [
    "Enclosure",
    "phi",
    "eval_partial",
    "eval_dyadic",
    "eval_enclosure",
    "c_of_r",
    "eval_via_d",
    "range_on_interval",
]


def _frac(x) -> Fraction:
    if isinstance(x, DyadicRational):
        return x.as_fraction
    return Fraction(x)


@dataclass(frozen=True)
class Enclosure:
    """Exact interval [lo, hi] certified to contain a value or a range."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = _frac(self.lo), _frac(self.hi)
        if lo > hi:
            raise ValueError(f"empty enclosure [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        v = _frac(value)
        return self.lo <= v <= self.hi

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi)}


def phi(x) -> Fraction:
    """Distance from x to the nearest integer."""
    q = _frac(x)
    r = q - (q.numerator // q.denominator)
    return min(r, 1 - r)


def eval_partial(seq: SignSequence, x, k: int) -> Fraction:
    """Partial sum f_k(x) = sum_(n<k) r_n 2^(-n) phi(2^n x), exactly."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    q = _frac(x)
    total = Fraction(0)
    for n in range(k):
        total += Fraction(seq.sign_at(n), 2**n) * phi(q * 2**n)
    return total


def eval_dyadic(seq: SignSequence, x) -> Fraction:
    """f(x) at a dyadic rational in [0, 1], exactly.

    All series terms beyond the exponent of x vanish, so the partial sum
    is the exact value.  f(1) = f(0) = 0 by periodicity.
    """
    if isinstance(x, DyadicRational):
        xf = x.as_fraction
    else:
        xf = Fraction(x)
        if xf.denominator & (xf.denominator - 1):
            raise DomainError(f"{x} is not dyadic")
    if not 0 <= xf <= 1:
        raise DomainError(f"{x} is outside [0, 1]")
    return eval_partial(seq, xf, xf.denominator.bit_length() - 1)


def eval_enclosure(seq: SignSequence, x, k: int) -> Enclosure:
    """Certified enclosure of f(x) for exact rational x in [0, 1].

    f(x) lies in f_k(x) + 2^(-k) * [min, max] of the depth-k shifted
    function, so the width is at most (2/3) * 2^(-k).
    """
    q = _frac(x)
    if not 0 <= q <= 1:
        raise DomainError(f"{x} is outside [0, 1]")
    base = eval_partial(seq, q, k)
    ext = extrema(shift(seq, k))
    scale = Fraction(1, 2**k)
    return Enclosure(base + scale * ext.min_value, base + scale * ext.max_value)


def c_of_r(seq: SignSequence) -> Fraction:
    """The constant sum_n r_n / 2^(n+2), exact via the period's geometric series."""
    a = seq.transient
    p = seq.period_length
    total = Fraction(0)
    for n in range(a):
        total += Fraction(seq.sign_at(n), 2 ** (n + 2))
    block = sum(Fraction(seq.sign_at(a + i), 2 ** (a + i + 2)) for i in range(p))
    return total + block * Fraction(2**p, 2**p - 1)


def eval_via_d(seq: SignSequence, word: BinaryWord) -> Enclosure:
    """Enclosure of f at value(word) from the digit-walk series.

    Uses f(x) = C(r) - (1/4) sum_(n>=1) (-1)^(e_(n+1)) D_n(x) / 2^n with
    the first depth-1 terms; the tail is bounded by |D_n| <= n, giving
    (1/4) * sum_(n>=d) n 2^(-n) = (d+1) 2^(-d-1).  Cross-check route only.
    """
    d = word.depth
    trace = walk(seq, word)
    center = c_of_r(seq)
    for n in range(1, d):
        eps = word.bits[n]  # e_(n+1), 0-based
        center -= Fraction((-1) ** eps * trace.values[n - 1], 4 * 2**n)
    tail = Fraction(d + 1, 2 ** (d + 1))
    return Enclosure(center - tail, center + tail)


def range_on_interval(seq: SignSequence, word: BinaryWord) -> Enclosure:
    """Sound enclosure of f over the depth-n cell [value(word), value(word) + 2^(-n)].

    f_n is linear between the exact endpoint values, and the tail over the
    cell is 2^(-n) times the full range of the shifted function; when
    D_n = 0 the bound is the exact range of f over the cell.
    """
    n = word.depth
    a = word.value().as_fraction
    b = a + Fraction(1, 2**n)
    va = eval_dyadic(seq, a)
    vb = eval_dyadic(seq, b)
    ext = extrema(shift(seq, n))
    scale = Fraction(1, 2**n)
    return Enclosure(
        min(va, vb) + scale * ext.min_value, max(va, vb) + scale * ext.max_value
    )
