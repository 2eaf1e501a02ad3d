"""Eventually periodic sign sequences and the exact extrema they induce.

A sequence r = (r_0, r_1, ...) of signs +-1 defines the function
f_r(x) = sum_n r_n 2^(-n) phi(2^n x), where phi is the distance to the
nearest integer.  The running sums s_n = r_0 + ... + r_(n-1) form a
deterministic +-1 walk whose first-passage times at odd levels determine
the exact range of f_r: each odd positive level j first reached at time
tau_j contributes 2^(-tau_j) to the maximum, and symmetrically the odd
negative levels build the minimum.  For eventually periodic sequences the
record times are eventually arithmetic, so both sums close to exact
rationals via geometric series.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import SignSpecError

__all__ = [
    "SignSequence",
    "HittingTime",
    "INFINITE",
    "ExtremaReport",
    "HeightClass",
    "parse_spec",
    "partial_sum",
    "hitting_time",
    "extrema",
    "shift",
    "negate",
    "classify_height",
]


def _primitive(period: tuple[int, ...]) -> tuple[int, ...]:
    """Shortest word whose repetition generates `period`."""
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period == period[:d] * (n // d):
            return period[:d]
    return period


@dataclass(frozen=True)
class SignSequence:
    """Immutable eventually periodic sequence of signs +-1.

    Stored canonically: the period is primitive and the preamble never ends
    with a sign the rotated period could supply, so two descriptions of the
    same sequence compare (and hash) equal.
    """

    preamble: tuple[int, ...] = ()
    period: tuple[int, ...] = (1,)

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        for v in (*self.preamble, *self.period):
            if v not in (-1, 1):
                raise ValueError(f"signs must be +1 or -1, got {v!r}")
        preamble = tuple(self.preamble)
        period = _primitive(tuple(self.period))
        while preamble and preamble[-1] == period[-1]:
            preamble = preamble[:-1]
            period = period[-1:] + period[:-1]
        object.__setattr__(self, "preamble", preamble)
        object.__setattr__(self, "period", period)

    @property
    def transient(self) -> int:
        return len(self.preamble)

    @property
    def period_length(self) -> int:
        return len(self.period)

    @property
    def drift(self) -> int:
        """Sum of one period of signs."""
        return sum(self.period)

    def sign_at(self, n: int) -> int:
        if n < 0:
            raise ValueError("index must be nonnegative")
        if n < len(self.preamble):
            return self.preamble[n]
        return self.period[(n - len(self.preamble)) % len(self.period)]

    def signs(self, count: int) -> tuple[int, ...]:
        """First `count` signs as a tuple."""
        a = len(self.preamble)
        if count <= a:
            return self.preamble[:count]
        reps = (count - a) // len(self.period) + 1
        return (self.preamble + self.period * reps)[:count]

    def __str__(self) -> str:
        pre = "".join("+" if v > 0 else "-" for v in self.preamble)
        per = "".join("+" if v > 0 else "-" for v in self.period)
        return f"{pre}({per})"


def parse_spec(text: str) -> SignSequence:
    """Parse a sign-spec string: optional +- preamble, then a (...) period.

    Examples: "(+)", "(+-)", "-(+)", "(+--)".
    """
    i = 0
    pre = []
    while i < len(text) and text[i] in "+-":
        pre.append(1 if text[i] == "+" else -1)
        i += 1
    if i >= len(text) or text[i] != "(":
        raise SignSpecError("expected '(' opening the period", position=i)
    i += 1
    per = []
    while i < len(text) and text[i] in "+-":
        per.append(1 if text[i] == "+" else -1)
        i += 1
    if not per:
        raise SignSpecError("period must contain at least one sign", position=i)
    if i >= len(text) or text[i] != ")":
        raise SignSpecError("expected ')' closing the period", position=i)
    if i + 1 != len(text):
        raise SignSpecError("trailing characters after period", position=i + 1)
    return SignSequence(tuple(pre), tuple(per))


@dataclass(frozen=True)
class HittingTime:
    """First-passage time of the sign walk; value None means never reached."""

    value: int | None

    @property
    def finite(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        return "INFINITE" if self.value is None else str(self.value)


INFINITE = HittingTime(None)


class HeightClass(enum.Enum):
    HALF = "HALF"
    TWO_THIRDS = "TWO_THIRDS"
    INTERMEDIATE = "INTERMEDIATE"


@dataclass(frozen=True)
class ExtremaReport:
    """Exact maximum, minimum and height of f_r over [0, 1]."""

    max_value: Fraction
    min_value: Fraction
    height: Fraction

    def to_json(self) -> dict:
        def pair(q: Fraction) -> dict:
            return {"num": q.numerator, "den": q.denominator}

        return {
            "max": pair(self.max_value),
            "min": pair(self.min_value),
            "height": pair(self.height),
        }


def partial_sum(seq: SignSequence, n: int) -> int:
    """Walk value s_n = r_0 + ... + r_(n-1); s_0 = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = seq.transient
    if n <= a:
        return sum(seq.preamble[:n])
    cycles, rem = divmod(n - a, seq.period_length)
    return sum(seq.preamble) + cycles * seq.drift + sum(seq.period[:rem])


@lru_cache(maxsize=None)
def _window(seq: SignSequence) -> tuple[int, ...]:
    """Walk values s_0 .. s_(A+P).

    With drift 0 the walk revisits exactly these values forever; with
    nonzero drift every later value differs from a window value by a
    positive multiple of the drift, so window extrema bound the walk on
    its anti-drift side.
    """
    n = seq.transient + seq.period_length
    out = [0]
    for k in range(n):
        out.append(out[-1] + seq.sign_at(k))
    return tuple(out)


def hitting_time(seq: SignSequence, j: int) -> HittingTime:
    """First n with s_n = j, or INFINITE (certified, not a timeout)."""
    if j == 0:
        raise ValueError("level j must be nonzero")
    window = _window(seq)
    for n, v in enumerate(window):
        if v == j:
            return HittingTime(n)
    d = seq.drift
    if d == 0:
        return INFINITE
    if (d > 0 and j < min(window)) or (d < 0 and j > max(window)):
        return INFINITE
    # Reachable beyond the window: simulate until hit (steps are +-1, so the
    # walk passes through every level between the window and its drift).
    s = window[-1]
    n = len(window) - 1
    cap = n + seq.period_length * (abs(j) + max(window) - min(window) + 4)
    while n < cap:
        s += seq.sign_at(n)
        n += 1
        if s == j:
            return HittingTime(n)
    raise RuntimeError("hitting-time simulation cap exceeded (internal error)")


def _record_sum(seq: SignSequence) -> Fraction:
    """Sum of 2^(-tau_j) over odd positive levels j (the exact maximum).

    Beyond the first odd level J* exceeding every window value, the record
    times satisfy tau_(j+S) = tau_j + Q, where S steps the level by one
    drift per period (doubled when the drift is odd, to stay on odd
    levels).  The tail is then a finite sum of geometric series.
    """
    window = _window(seq)
    d = seq.drift
    maxwin = max(window)
    if d <= 0:
        total = Fraction(0)
        seen: set[int] = set()
        for n, v in enumerate(window):
            if v >= 1 and v % 2 == 1 and v not in seen:
                seen.add(v)
                total += Fraction(1, 2**n)
        return total
    jstar = maxwin + 1 if maxwin % 2 == 0 else maxwin + 2
    big_s, big_q = (d, seq.period_length) if d % 2 == 0 else (2 * d, 2 * seq.period_length)
    target = jstar + big_s
    taus: dict[int, int] = {}
    s = 0
    n = 0
    cap = seq.transient + seq.period_length * (target - min(window) + 4)
    while s != target:
        if n > cap:
            raise RuntimeError("record-sum simulation cap exceeded (internal error)")
        s += seq.sign_at(n)
        n += 1
        if s % 2 == 1 and s >= 1 and s not in taus:
            taus[s] = n
    total = Fraction(0)
    for j in range(1, jstar, 2):
        total += Fraction(1, 2 ** taus[j])
    ratio = Fraction(2**big_q, 2**big_q - 1)
    for t in range(big_s // 2):
        total += Fraction(1, 2 ** taus[jstar + 2 * t]) * ratio
    return total


def _truncated_record_sum(seq: SignSequence, steps: int) -> Fraction:
    """Sum of 2^(-tau_j) over odd positive records observed within `steps`."""
    total = Fraction(0)
    s = 0
    best = 0
    for n in range(1, steps + 1):
        s += seq.sign_at(n - 1)
        if s > best:
            best = s
            if s % 2 == 1:
                total += Fraction(1, 2**n)
    return total


def negate(seq: SignSequence) -> SignSequence:
    """Sequence of flipped signs; f_(negate(r)) = -f_r."""
    return SignSequence(
        tuple(-v for v in seq.preamble), tuple(-v for v in seq.period)
    )


_CROSS_CHECK_STEPS = 64


@lru_cache(maxsize=None)
def extrema(seq: SignSequence) -> ExtremaReport:
    """Exact maximum, minimum and height of f_r, as rationals.

    The closed form is cross-checked against the plain truncated record
    sum: the two must agree to within 2^(-64).
    """
    mx = _record_sum(seq)
    mn = -_record_sum(negate(seq))
    for closed, sq in ((mx, seq), (-mn, negate(seq))):
        truncated = _truncated_record_sum(sq, _CROSS_CHECK_STEPS)
        if abs(closed - truncated) > Fraction(1, 2**_CROSS_CHECK_STEPS):
            raise ArithmeticError(
                f"closed-form record sum for {sq} fails truncation cross-check"
            )
    return ExtremaReport(mx, mn, mx - mn)


def shift(seq: SignSequence, n: int) -> SignSequence:
    """Sequence r' with r'_k = r_(n+k)."""
    if n < 0:
        raise ValueError("shift must be nonnegative")
    a = seq.transient
    if n <= a:
        return SignSequence(seq.preamble[n:], seq.period)
    k = (n - a) % seq.period_length
    return SignSequence((), seq.period[k:] + seq.period[:k])


def classify_height(seq: SignSequence) -> HeightClass:
    """HALF / TWO_THIRDS / INTERMEDIATE, decided from one walk window.

    Height 1/2 holds exactly when the walk stays forever in {0,1,2} or in
    {0,-1,-2} (possible only with zero drift, so the window decides).
    Height 2/3 holds exactly when all signs from index 1 on are equal.
    """
    window = set(_window(seq))
    if seq.drift == 0 and (window <= {0, 1, 2} or window <= {0, -1, -2}):
        return HeightClass.HALF
    tail = {seq.sign_at(n) for n in range(1, seq.transient + seq.period_length + 1)}
    if len(tail) == 1:
        return HeightClass.TWO_THIRDS
    return HeightClass.INTERMEDIATE
