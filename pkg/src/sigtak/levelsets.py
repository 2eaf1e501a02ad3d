"""Level sets L_f(y) via exact branch-and-bound, and the skeleton solver.

The cover algorithm bisects the unit interval, pruning any dyadic cell
whose certified range bound excludes y; ties retain the cell, so the
surviving depth-N cells are a sound cover of the level set.  On the
skeleton set (the complement of all first-generation hump intervals) the
function is monotone up to symmetry, which yields an exact bisection
solver and explicit non-monotonicity witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernel
from .dyadics import BinaryWord, DyadicRational, digits
from .errors import DomainError
from .evaluate import Enclosure, eval_dyadic, eval_enclosure
from .signs import SignSequence, extrema, negate, shift

__all__ = [
    "LevelCover",
    "SkeletonSolution",
    "WitnessTriple",
    "BoxCountEstimate",
    "level_cover",
    "component_profile",
    "box_dimension_estimate",
    "f_star",
    "solve_on_X",
    "non_monotonicity_witness",
    "in_balanced_image",
]


def _frac(x) -> Fraction:
    if isinstance(x, DyadicRational):
        return x.as_fraction
    return Fraction(x)


def _extrema_tables(seq: SignSequence, depth: int):
    lows = []
    highs = []
    for n in range(depth + 1):
        ext = extrema(shift(seq, n))
        lows.append(ext.min_value)
        highs.append(ext.max_value)
    return lows, highs


@dataclass(frozen=True)
class LevelCover:
    """Sound cover of L_f(y) by depth-N dyadic cells, merged into runs.

    `runs` holds half-open leaf-index ranges [start, end); the covered
    x-interval of a run is [start/2^N, end/2^N].
    """

    target_y: Fraction
    depth: int
    runs: tuple[tuple[int, int], ...]
    retained_count: int

    @property
    def component_count(self) -> int:
        return len(self.runs)

    def intervals(self) -> list[tuple[DyadicRational, DyadicRational]]:
        return [
            (DyadicRational(s, self.depth), DyadicRational(e, self.depth))
            for s, e in self.runs
        ]

    def contains(self, x) -> bool:
        """True when x lies in some retained (closed) run."""
        xf = _frac(x)
        scaled = xf * 2**self.depth
        return any(s <= scaled <= e for s, e in self.runs)

    def to_json(self) -> dict:
        return {
            "y": str(self.target_y),
            "depth": self.depth,
            "retained": self.retained_count,
            "components": self.component_count,
            "runs": [[s, e] for s, e in self.runs],
        }


def _merge_runs(leaves) -> tuple[tuple[int, int], ...]:
    runs = []
    for k in leaves:
        if runs and runs[-1][1] == k:
            runs[-1][1] = k + 1
        else:
            runs.append([k, k + 1])
    return tuple((s, e) for s, e in runs)


def level_cover(seq: SignSequence, y, depth: int) -> LevelCover:
    """Sound disjoint cover of {x : f(x) = y} at the given depth.

    An empty cover certifies the level set is empty.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    yf = _frac(y)
    lows, highs = _extrema_tables(seq, depth)
    leaves = _kernel.level_cover_leaves(seq.signs(depth), depth, yf, lows, highs)
    return LevelCover(yf, depth, _merge_runs(leaves), len(leaves))


def component_profile(seq: SignSequence, y, depths) -> list[int]:
    """Component counts of the cover at each depth (depths increasing)."""
    depths = list(depths)
    if any(b <= a for a, b in zip(depths, depths[1:])):
        raise ValueError("depths must be strictly increasing")
    return [level_cover(seq, y, n).component_count for n in depths]


@dataclass(frozen=True)
class BoxCountEstimate:
    slope: float
    intercept: float
    residual: float
    depths: tuple[int, ...]
    counts: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
            "depths": list(self.depths),
            "counts": list(self.counts),
        }


def box_dimension_estimate(seq: SignSequence, y, depths) -> BoxCountEstimate:
    """Least-squares slope of log2(retained cells) against depth."""
    depths = [int(n) for n in depths]
    if len(depths) < 4:
        raise ValueError("need at least 4 depths for a regression")
    counts = [level_cover(seq, y, n).retained_count for n in depths]
    if any(c == 0 for c in counts):
        raise DomainError("empty cover: box-count regression is degenerate")
    xs = np.asarray(depths, dtype=float)
    ys = np.log2(np.asarray(counts, dtype=float))
    (slope, intercept), res = np.polyfit(xs, ys, 1, full=True)[:2]
    residual = float(res[0]) if len(res) else 0.0
    return BoxCountEstimate(
        float(slope), float(intercept), residual, tuple(depths), tuple(counts)
    )


def _digit_scan_first_zero(seq: SignSequence, x: Fraction, limit: int):
    """Scan the binary digits of x tracking the walk; stop at the first zero.

    Returns (prefix_word, depth_of_zero) or (None, digits_consumed) when no
    zero occurs within `limit` digits.
    """
    p, q = x.numerator, x.denominator
    d = 0
    bits = []
    for j in range(1, limit + 1):
        p *= 2
        bit = 1 if p >= q else 0
        p -= bit * q
        bits.append(bit)
        d += seq.sign_at(j - 1) * (1 if bit == 0 else -1)
        if d == 0:
            return BinaryWord(tuple(bits)), j
    return None, len(bits)


def f_star(seq: SignSequence, x, depth: int) -> Enclosure:
    """Monotone flattening of f on [0, 1/2]: freeze at the first walk zero.

    If the digit walk of x hits zero at depth j, the value is exactly f of
    the truncated word; otherwise an enclosure at the scan depth is
    returned (exact when x is dyadic, since then the remaining digits are
    zero and any later freeze happens at x itself).
    """
    if seq.sign_at(0) != 1:
        raise DomainError("f_star requires a leading +1 sign; use the negation symmetry")
    xf = _frac(x)
    if not 0 <= xf <= Fraction(1, 2):
        raise DomainError(f"{x} is outside [0, 1/2]")
    word, j = _digit_scan_first_zero(seq, xf, depth)
    if word is not None:
        v = eval_dyadic(seq, word.value())
        return Enclosure(v, v)
    den = xf.denominator
    if den & (den - 1) == 0 and den.bit_length() - 1 <= depth:
        v = eval_dyadic(seq, xf)  # dyadic, fully scanned: exact
        return Enclosure(v, v)
    return eval_enclosure(seq, xf, depth)


@dataclass(frozen=True)
class SkeletonSolution:
    """Enclosure of a skeleton-set solution of f(x) = y.

    hit_balanced is set when the bisection froze on a balanced word whose
    exact value equals y (y lies in the image of the first-generation
    bases).
    """

    x_enclosure: Enclosure
    hit_balanced: BinaryWord | None

    def to_json(self) -> dict:
        return {
            "x": self.x_enclosure.to_json(),
            "hit_balanced": str(self.hit_balanced) if self.hit_balanced else None,
        }


def _fstar_exact_dyadic(seq: SignSequence, x: DyadicRational):
    """Exact f* at a dyadic point: (value, frozen word or None).

    Scanning only the explicit digits suffices: a walk zero on the all-zero
    tail freezes at a word whose value is x itself, so there f* = f(x).
    """
    word = digits(x, x.exponent)
    d = 0
    for j, bit in enumerate(word.bits, start=1):
        d += seq.sign_at(j - 1) * (1 if bit == 0 else -1)
        if d == 0:
            frozen = word.prefix(j)
            return eval_dyadic(seq, frozen.value()), frozen
    return eval_dyadic(seq, x), None


def solve_on_X(seq: SignSequence, y, tol_bits: int = 20) -> SkeletonSolution:
    """Bisection for the (essentially unique) skeleton solution of f(x) = y.

    Invariant: lo and hi are dyadic skeleton points with exact values
    f(lo) <= y <= f(hi), so the final bracket provably contains a
    solution.  Every midpoint's f* value is exactly computable, and a
    frozen midpoint moves the bracket to an endpoint of the frozen
    interval, where f agrees with the frozen value.
    """
    yf = _frac(y)
    if seq.sign_at(0) == -1:
        return solve_on_X(negate(seq), -yf, tol_bits)
    if not 0 <= yf <= Fraction(1, 2):
        raise DomainError(f"target {y} is outside the skeleton image [0, 1/2]")
    lo = DyadicRational(0)
    hi = DyadicRational(1, 1)  # x = 1/2
    tol = Fraction(1, 2**tol_bits)
    half = DyadicRational(1, 1)
    while hi.as_fraction - lo.as_fraction > tol:
        mid = (lo + hi) * half
        v, frozen = _fstar_exact_dyadic(seq, mid)
        if v == yf:
            point = frozen.value().as_fraction if frozen is not None else mid.as_fraction
            return SkeletonSolution(Enclosure(point, point), frozen)
        if frozen is not None:
            base = frozen.value()
            if v < yf:
                lo = base + DyadicRational(1, frozen.depth)
            else:
                hi = base
        elif v < yf:
            lo = mid
        else:
            hi = mid
    return SkeletonSolution(Enclosure(lo.as_fraction, hi.as_fraction), None)


@dataclass(frozen=True)
class WitnessTriple:
    """Exact non-monotonicity witness: equal endpoint values, midpoint off by d/2."""

    x0: DyadicRational
    midpoint: DyadicRational
    x1: DyadicRational
    f_x0: Fraction
    f_mid: Fraction
    f_x1: Fraction

    @property
    def d(self) -> Fraction:
        return self.x1.as_fraction - self.x0.as_fraction

    def to_json(self) -> dict:
        return {
            "x0": str(self.x0),
            "mid": str(self.midpoint),
            "x1": str(self.x1),
            "f_x0": str(self.f_x0),
            "f_mid": str(self.f_mid),
            "f_x1": str(self.f_x1),
            "d": str(self.d),
        }


def non_monotonicity_witness(seq: SignSequence, lo, hi) -> WitnessTriple:
    """A balanced cell inside [lo, hi] witnessing non-monotonicity.

    Scans dyadic cells of increasing even depth for a balanced base whose
    interval fits in [lo, hi]; density of balanced cells guarantees
    success once the cell size is small enough relative to the interval.
    """
    lof, hif = _frac(lo), _frac(hi)
    if not (0 <= lof < hif <= 1):
        raise DomainError("witness interval must satisfy 0 <= lo < hi <= 1")
    max_m = (max(lof.denominator.bit_length(), hif.denominator.bit_length()) + 8)
    for m in range(1, max_m + 1):
        n = 2 * m
        cells = 1 << n
        kmin = -(-lof.numerator * cells // lof.denominator)  # ceil(lo * 4^m)
        kmax = hif.numerator * cells // hif.denominator  # floor(hi * 4^m)
        signs = seq.signs(n)
        for k in range(kmin, kmax):
            d = 0
            bal = True
            for j in range(n):
                bit = (k >> (n - 1 - j)) & 1
                d += signs[j] * (1 if bit == 0 else -1)
                if abs(d) > n - (j + 1):
                    bal = False
                    break
            if bal and d == 0:
                x0 = DyadicRational(k, n)
                x1 = DyadicRational(k + 1, n)
                mid = DyadicRational(2 * k + 1, n + 1)
                return WitnessTriple(
                    x0, mid, x1,
                    eval_dyadic(seq, x0),
                    eval_dyadic(seq, mid),
                    eval_dyadic(seq, x1),
                )
    raise RuntimeError("no balanced cell found (interval too small for the scan cap)")


def in_balanced_image(seq: SignSequence, y, max_order: int) -> BinaryWord | None:
    """First balanced word of order <= max_order whose exact value is y.

    Returns None when no witness exists up to the cutoff; this is not a
    certification that y avoids the full balanced image.  Balanced values
    are dyadic (integer multiples of 4^(-m)), so non-dyadic targets are
    rejected immediately; otherwise a range-pruned descent visits only
    cells whose bound still contains y.
    """
    yf = _frac(y)
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    if yf == 0:
        return BinaryWord(())
    den = yf.denominator
    if den & (den - 1) or den > 4**max_order:
        return None
    depth = 2 * max_order
    signs = seq.signs(depth)
    lows, highs = _extrema_tables(seq, depth)
    p, q = yf.numerator, yf.denominator
    shifted_p = p << depth
    lo_lhs = [shifted_p * f.denominator for f in lows]
    hi_lhs = [shifted_p * f.denominator for f in highs]
    matches: list[tuple[int, int]] = []

    def visit(n, idx, d, va, vb):
        a, b = (va, vb) if va <= vb else (vb, va)
        if lo_lhs[n] < q * (a * lows[n].denominator + (lows[n].numerator << (depth - n))):
            return
        if hi_lhs[n] > q * (b * highs[n].denominator + (highs[n].numerator << (depth - n))):
            return
        if n % 2 == 0 and n > 0 and d == 0 and va * q == shifted_p:
            matches.append((n, idx))
        if n == depth:
            return
        mid = (va + vb) // 2 + signs[n] * (1 << (depth - n - 1))
        step = signs[n]
        visit(n + 1, idx << 1, d + step, va, mid)
        visit(n + 1, (idx << 1) | 1, d - step, mid, vb)

    visit(0, 0, 0, 0, 0)
    if not matches:
        return None
    n, idx = min(matches)
    return BinaryWord(tuple((idx >> (n - 1 - i)) & 1 for i in range(n)))
