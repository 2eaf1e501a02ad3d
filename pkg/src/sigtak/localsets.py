"""Local level sets: |D|-signature classes, principal points, counting.

Two points are locally equivalent when their digit walks agree in
absolute value at every depth.  Each class is contained in one level set,
contains a unique member with nonnegative walk (its principal point), and
is finite exactly when the walk visits zero finitely often.  The number
of finite classes inside L_f(y) equals the number of truncated principal
humps whose y-projection contains y.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import humps, levelsets
from .dyadics import BinaryWord, principal_word, walk
from .errors import BudgetError, DomainError
from .signs import SignSequence

__all__ = [
    "LocalSignature",
    "LocalKind",
    "LocalClassification",
    "LocalCountReport",
    "signature",
    "principal_representative",
    "local_class_members",
    "classify_local",
    "count_local_level_sets",
]

MAX_FLIP_BLOCKS = 20


@dataclass(frozen=True)
class LocalSignature:
    """Pointwise absolute value |D_1|, ..., |D_n| of a digit walk."""

    abs_walk: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.abs_walk)


def signature(seq: SignSequence, word: BinaryWord) -> LocalSignature:
    return LocalSignature(tuple(abs(v) for v in walk(seq, word).values))


def principal_representative(seq: SignSequence, word: BinaryWord) -> BinaryWord:
    """The class member whose walk is nonnegative; idempotent."""
    return principal_word(seq, word)


def _flip_blocks(seq: SignSequence, word: BinaryWord) -> list[tuple[int, int]]:
    """Maximal digit blocks between consecutive walk zeros (trailing
    incomplete excursion included); each may be flipped independently."""
    trace = walk(seq, word)
    blocks = []
    start = 0
    for j, v in enumerate(trace.values, start=1):
        if v == 0:
            blocks.append((start, j))
            start = j
    if start < word.depth:
        blocks.append((start, word.depth))
    return blocks


def local_class_members(seq: SignSequence, word: BinaryWord) -> list[BinaryWord]:
    """All words of the same depth with the same signature: 2^(#blocks) many."""
    blocks = _flip_blocks(seq, word)
    if len(blocks) > MAX_FLIP_BLOCKS:
        raise BudgetError(
            f"{len(blocks)} flip blocks exceed the budget {MAX_FLIP_BLOCKS}"
        )
    members = []
    for mask in product((False, True), repeat=len(blocks)):
        bits = list(word.bits)
        for flip, (s, e) in zip(mask, blocks):
            if flip:
                bits[s:e] = (1 - b for b in bits[s:e])
        members.append(BinaryWord(tuple(bits)))
    members.sort(key=lambda w: w.bits)
    return members


class LocalKind(enum.Enum):
    FINITE = "FINITE"
    CANTOR = "CANTOR"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class LocalClassification:
    kind: LocalKind
    last_zero: int | None  # for FINITE: last j with D_j = 0 (0 when never again)


def classify_local(seq: SignSequence, x, horizon: int = 4096) -> LocalClassification:
    """FINITE or CANTOR by deciding whether the walk of x hits zero infinitely often.

    For rational x the joint (digit remainder, sign phase) process is
    eventually periodic; one detected cycle plus its walk drift decides
    everything exactly.  UNDECIDED is returned only when no cycle appears
    within the horizon.
    """
    xf = Fraction(x) if not isinstance(x, Fraction) else x
    if not 0 <= xf < 1:
        raise DomainError(f"{x} is outside [0, 1)")
    p, q = xf.numerator, xf.denominator
    a, per = seq.transient, seq.period_length
    d = 0
    walk_values = [0]  # D_0 .. D_n
    zeros = [0]
    seen: dict[tuple[int, int], int] = {}
    for n in range(horizon):
        if n >= a:
            key = (p, (n - a) % per)
            if key in seen:
                n0 = seen[key]
                cycle = walk_values[n0 : n + 1]  # D_(n0) .. D_n
                drift = walk_values[n] - walk_values[n0]
                length = n - n0
                if drift == 0:
                    if any(v == 0 for v in cycle[:-1]):
                        return LocalClassification(LocalKind.CANTOR, None)
                    return LocalClassification(LocalKind.FINITE, max(zeros))
                last = max(zeros)
                for off, v in enumerate(cycle[:-1]):
                    if v % drift == 0:
                        k = -v // drift
                        if k >= 1:
                            last = max(last, n0 + off + k * length)
                return LocalClassification(LocalKind.FINITE, last)
            seen[key] = n
        p *= 2
        bit = 1 if p >= q else 0
        p -= bit * q
        d += seq.sign_at(n) * (1 if bit == 0 else -1)
        walk_values.append(d)
        if d == 0:
            zeros.append(n + 1)
    return LocalClassification(LocalKind.UNDECIDED, None)


@dataclass(frozen=True)
class LocalCountReport:
    """Count of truncated principal projections (order <= max_order) containing y."""

    y: Fraction
    max_order: int
    count: int
    boundary: bool
    balanced: bool

    def to_json(self) -> dict:
        return {
            "y": str(self.y),
            "max_order": self.max_order,
            "count": self.count,
            "boundary": self.boundary,
            "balanced": self.balanced,
        }

    def csv_row(self) -> list[str]:
        return [
            str(self.y),
            str(self.max_order),
            str(self.count),
            "1" if self.boundary else "0",
            "1" if self.balanced else "0",
        ]


def count_local_level_sets(seq: SignSequence, y, max_order: int) -> LocalCountReport:
    """Number of finite local level sets inside L_f(y), counted up to the cutoff.

    Exact while y avoids the balanced image (balanced flag reports the
    violation); humps beyond max_order are simply not counted.
    """
    yf = Fraction(y) if not isinstance(y, Fraction) else y
    table = humps.principal_projection_table(seq, max_order)
    count, boundary = humps.projection_count(table, yf)
    balanced = levelsets.in_balanced_image(seq, yf, max_order) is not None
    return LocalCountReport(yf, max_order, count, boundary, balanced)
