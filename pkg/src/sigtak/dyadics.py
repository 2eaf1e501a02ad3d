"""Exact dyadic rationals, finite binary words, and the digit walk D_k.

A binary word e_1 ... e_n (the expansion of a dyadic rational, completed
with zeros) combined with a sign sequence yields the walk
D_k = sum_(j<=k) r_(j-1) * (-1)^(e_j), whose zeros mark balanced prefixes.
Depth is part of a word's identity: "01" and "0100" denote the same
number but different prefixes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import DomainError
from .signs import SignSequence

__all__ = [
    "DyadicRational",
    "BinaryWord",
    "WalkTrace",
    "digits",
    "walk",
    "is_balanced",
    "principal_word",
]


@total_ordering
@dataclass(frozen=True, eq=False)
class DyadicRational:
    """Exact value numerator / 2^exponent, canonical (odd numerator or exponent 0)."""

    numerator: int
    exponent: int = 0

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("exponent must be nonnegative")
        num, exp = self.numerator, self.exponent
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    @classmethod
    def from_fraction(cls, q: Fraction | int) -> "DyadicRational":
        q = Fraction(q)
        den = q.denominator
        if den & (den - 1):
            raise DomainError(f"{q} is not a dyadic rational")
        return cls(q.numerator, den.bit_length() - 1)

    @classmethod
    def parse(cls, text: str) -> "DyadicRational":
        """Accept "k", "k/2^n", or "p/q" with q a power of two."""
        text = text.strip()
        try:
            if "/" not in text:
                return cls(int(text), 0)
            num, den = text.split("/", 1)
            if den.startswith("2^"):
                return cls(int(num), int(den[2:]))
            return cls.from_fraction(Fraction(int(num), int(den)))
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse dyadic rational {text!r}: {exc}") from exc

    @property
    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 2**self.exponent)

    def __float__(self) -> float:
        return self.numerator / 2.0**self.exponent

    def _key(self, other) -> tuple[int, int]:
        """Cross-multiplied comparison pair (self_scaled, other_scaled)."""
        if isinstance(other, DyadicRational):
            e = max(self.exponent, other.exponent)
            return (
                self.numerator << (e - self.exponent),
                other.numerator << (e - other.exponent),
            )
        if isinstance(other, int):
            return self.numerator, other << self.exponent
        if isinstance(other, Fraction):
            return self.numerator * other.denominator, other.numerator << self.exponent
        return NotImplemented, NotImplemented

    def __eq__(self, other) -> bool:
        a, b = self._key(other)
        return NotImplemented if a is NotImplemented else a == b

    def __lt__(self, other) -> bool:
        a, b = self._key(other)
        return NotImplemented if a is NotImplemented else a < b

    def __hash__(self):
        return hash(self.as_fraction)

    def __add__(self, other) -> "DyadicRational":
        if isinstance(other, int):
            other = DyadicRational(other, 0)
        if not isinstance(other, DyadicRational):
            return NotImplemented
        e = max(self.exponent, other.exponent)
        num = (self.numerator << (e - self.exponent)) + (
            other.numerator << (e - other.exponent)
        )
        return DyadicRational(num, e)

    __radd__ = __add__

    def __neg__(self) -> "DyadicRational":
        return DyadicRational(-self.numerator, self.exponent)

    def __sub__(self, other) -> "DyadicRational":
        return self + (-other)

    def __mul__(self, other) -> "DyadicRational":
        if isinstance(other, int):
            other = DyadicRational(other, 0)
        if not isinstance(other, DyadicRational):
            return NotImplemented
        return DyadicRational(self.numerator * other.numerator, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/2^{self.exponent}"


@dataclass(frozen=True)
class BinaryWord:
    """Finite digit prefix e_1 ... e_n; depth n is significant."""

    bits: tuple[int, ...] = ()

    def __post_init__(self):
        for b in self.bits:
            if b not in (0, 1):
                raise ValueError("bits must be 0 or 1")

    @classmethod
    def from_string(cls, text: str) -> "BinaryWord":
        return cls(tuple(int(c) for c in text))

    @property
    def depth(self) -> int:
        return len(self.bits)

    def value(self) -> DyadicRational:
        num = 0
        for b in self.bits:
            num = (num << 1) | b
        return DyadicRational(num, self.depth)

    def raw_index(self) -> int:
        """The integer k with value = k / 2^depth (before canonicalization)."""
        k = 0
        for b in self.bits:
            k = (k << 1) | b
        return k

    def append(self, bit: int) -> "BinaryWord":
        return BinaryWord(self.bits + (bit,))

    def prefix(self, n: int) -> "BinaryWord":
        return BinaryWord(self.bits[:n])

    def complement(self) -> "BinaryWord":
        return BinaryWord(tuple(1 - b for b in self.bits))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class WalkTrace:
    """Values D_1 .. D_n of the digit walk (D_0 = 0 is implicit)."""

    values: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.values)

    @property
    def final(self) -> int:
        return self.values[-1] if self.values else 0

    @property
    def zero_count(self) -> int:
        return sum(1 for v in self.values if v == 0)

    @property
    def minimum(self) -> int:
        return min(self.values, default=0)


def digits(x: DyadicRational, depth: int) -> BinaryWord:
    """Expansion of x in [0, 1) ending in all zeros, to the given depth."""
    if not 0 <= x.numerator:
        raise DomainError(f"{x} is not in [0, 1)")
    if x >= 1:
        raise DomainError(f"{x} is not in [0, 1)")
    if depth < x.exponent:
        raise DomainError(f"depth {depth} cannot represent {x} exactly")
    k = x.numerator << (depth - x.exponent)
    return BinaryWord(tuple((k >> (depth - 1 - i)) & 1 for i in range(depth)))


def walk(seq: SignSequence, word: BinaryWord) -> WalkTrace:
    """Digit walk of `word` under `seq`: D_j - D_(j-1) = r_(j-1) * (-1)^(e_j)."""
    d = 0
    values = []
    for j, bit in enumerate(word.bits):
        d += seq.sign_at(j) * (1 if bit == 0 else -1)
        values.append(d)
    return WalkTrace(tuple(values))


def is_balanced(seq: SignSequence, word: BinaryWord) -> tuple[bool, int]:
    """(word is balanced, generation).

    A word of even depth 2m is balanced when D_2m = 0; its generation is
    the number of zeros among D_1 .. D_2m.  Odd-depth words are never
    balanced (D_j has the parity of j).  The empty word is balanced of
    generation 0.
    """
    trace = walk(seq, word)
    balanced = word.depth % 2 == 0 and trace.final == 0
    return balanced, trace.zero_count


def principal_word(seq: SignSequence, word: BinaryWord) -> BinaryWord:
    """The unique word of equal depth whose walk is |D_j(word)| pointwise."""
    trace = walk(seq, word)
    bits = []
    prev = 0
    for j, v in enumerate(trace.values):
        inc = abs(v) - prev
        prev = abs(v)
        bits.append(0 if inc == seq.sign_at(j) else 1)
    return BinaryWord(tuple(bits))
