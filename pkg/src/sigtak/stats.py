"""Monte Carlo and exact-series experiments over level-set statistics.

Randomness is the Philox 4x64 counter-based generator (10 rounds) as
shipped by numpy, keyed by (seed, stream); identical seeds give
bit-identical reports.  Sampled ordinates are dyadic fractions built from
53 random bits, so they are exact rationals and every comparison against
exact projection endpoints is decidable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import humps, levelsets
from .signs import SignSequence, extrema

__all__ = [
    "McReport",
    "CardinalityReport",
    "make_rng",
    "integral_local_count_truncated",
    "average_local_count",
    "cardinality_histogram",
    "banach_lower_bound",
]

SAMPLE_BITS = 53


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox-backed generator; worker streams go in the high key word."""
    return np.random.Generator(np.random.Philox(key=(stream << 64) | seed))


def integral_local_count_truncated(max_order: int):
    """(1/2) sum_(m<=M) C_m 4^(-m): the truncated integral of the local count.

    Independent of the sign sequence; increases to 1.
    """
    series = humps.catalan_series(max_order)
    if isinstance(series, Fraction):
        return series / 2
    return series / 2.0


@dataclass(frozen=True)
class McReport:
    estimate: float
    std_error: float
    samples: int
    discarded: int
    seed: int
    truncation_order: int
    analytic_truncated: Fraction
    analytic_limit: Fraction

    def to_json(self) -> dict:
        return {
            "estimate_float": self.estimate,
            "std_error_float": self.std_error,
            "samples": self.samples,
            "discarded": self.discarded,
            "seed": self.seed,
            "truncation_order": self.truncation_order,
            "analytic_truncated": str(self.analytic_truncated),
            "analytic_limit": str(self.analytic_limit),
        }


def _sample_ys(seq: SignSequence, n: int, rng: np.random.Generator):
    """n exact ordinates uniform on the 2^-53 grid of [min f, max f]."""
    ext = extrema(seq)
    ks = rng.integers(0, 1 << SAMPLE_BITS, size=n, dtype=np.uint64)
    h = ext.height
    lo = ext.min_value
    return [lo + h * Fraction(int(k), 1 << SAMPLE_BITS) for k in ks]


def average_local_count(
    seq: SignSequence, samples: int, max_order: int, seed: int
) -> McReport:
    """Monte Carlo average of the local-level-set count over the range of f.

    The exact expectation of the estimator is the truncated integral
    divided by the height (up to the 2^-53 sampling grid); samples landing
    on a projection endpoint are discarded and reported.
    """
    if samples < 100:
        raise ValueError("need at least 100 samples")
    table = humps.principal_projection_table(seq, max_order)
    ext = extrema(seq)
    counts = []
    discarded = 0
    for y in _sample_ys(seq, samples, make_rng(seed)):
        c, boundary = humps.projection_count(table, y)
        if boundary:
            discarded += 1
            continue
        counts.append(c)
    arr = np.asarray(counts, dtype=float)
    estimate = float(arr.mean())
    std_error = float(arr.std(ddof=1) / math.sqrt(len(arr)))
    analytic = integral_local_count_truncated(max_order) / ext.height
    return McReport(
        estimate=estimate,
        std_error=std_error,
        samples=len(counts),
        discarded=discarded,
        seed=seed,
        truncation_order=max_order,
        analytic_truncated=analytic,
        analytic_limit=1 / ext.height,
    )


@dataclass(frozen=True)
class CardinalityReport:
    depths: tuple[int, int, int]
    samples: int
    seed: int
    stabilized_fraction: float
    histogram: dict[int, int]  # component count -> frequency, stabilized samples

    def to_json(self) -> dict:
        return {
            "depths": list(self.depths),
            "samples": self.samples,
            "seed": self.seed,
            "stabilized_fraction_float": self.stabilized_fraction,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def cardinality_histogram(
    seq: SignSequence, samples: int, depth: int, seed: int
) -> CardinalityReport:
    """Component counts at three depths per random ordinate.

    A sample stabilizes when the counts at depths N-4, N-2, N agree; for
    almost every y the level set is finite, so the stabilized fraction
    approaches 1 as N grows.
    """
    if samples < 100:
        raise ValueError("need at least 100 samples")
    if depth < 12:
        raise ValueError("depth must be at least 12")
    depths = (depth - 4, depth - 2, depth)
    histogram: dict[int, int] = {}
    stabilized = 0
    for y in _sample_ys(seq, samples, make_rng(seed)):
        counts = [levelsets.level_cover(seq, y, n).component_count for n in depths]
        if counts[0] == counts[1] == counts[2]:
            stabilized += 1
            histogram[counts[2]] = histogram.get(counts[2], 0) + 1
    return CardinalityReport(
        depths=depths,
        samples=samples,
        seed=seed,
        stabilized_fraction=stabilized / samples,
        histogram=histogram,
    )


def banach_lower_bound(seq: SignSequence, depth: int, grid: int) -> Fraction:
    """Grid lower-bound proxy for the indicatrix integral of |L_f(y)|.

    Sums component counts over a midpoint y-grid of the range times the
    grid spacing; grows without bound in the depth since f has unbounded
    variation.
    """
    if grid < 1:
        raise ValueError("grid must be positive")
    ext = extrema(seq)
    h = ext.height
    spacing = h / grid
    total = 0
    for i in range(grid):
        y = ext.min_value + h * Fraction(2 * i + 1, 2 * grid)
        total += levelsets.level_cover(seq, y, depth).component_count
    return total * spacing
