"""Exact integer and rational primitives in an arbitrary radix.

Naturals and signed integers are plain Python ints; rationals are
:class:`fractions.Fraction`, which is always kept in lowest terms with a
positive denominator.  Digit vectors are little-endian.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

import numpy as np

Rational = Fraction
Number = Union[int, Fraction]

# Safely under the interpreter's int<->str digit limit (4300 by default).
_STR_CHUNK = 4000
_STR_BITS = 13000

# Below this operand length the numpy convolution costs more than it saves.
_NUMPY_MIN_LEN = 24
_INT64_MAX = (1 << 63) - 1


class BaseMismatch(ValueError):
    pass


def _check_base(b: int) -> None:
    if isinstance(b, bool) or not isinstance(b, int) or b <= 1:
        raise ValueError(f"base must be an integer > 1, got {b!r}")


def _is_pow2(b: int) -> bool:
    return b & (b - 1) == 0


def to_decimal(n: int) -> str:
    """``str(n)`` without the interpreter's length limit."""
    if n < 0:
        return "-" + to_decimal(-n)
    if n.bit_length() <= _STR_BITS:
        return str(n)
    k = n.bit_length() * 30103 // 200000  # about half the decimal digits
    hi, lo = divmod(n, 10**k)
    return to_decimal(hi) + to_decimal(lo).zfill(k)


def parse_decimal(s: str) -> int:
    """``int(s)`` for decimal strings of any length."""
    s = s.strip()
    if len(s) <= _STR_CHUNK:
        return int(s, 10)
    sign = -1 if s[0] == "-" else 1
    body = s.lstrip("+-")
    if len(body) != len(s) - (s[0] in "+-") or not body.isdigit():
        raise ValueError(f"invalid decimal literal: {s[:20]}...")
    k = len(body) // 2
    return sign * (parse_decimal(body[:-k]) * 10**k + parse_decimal(body[-k:]))


def digit_count(b: int, n: int) -> int:
    """Number of base-``b`` digits of ``|n|``; zero has no digits."""
    _check_base(b)
    return ndigits(b, abs(n))


def ndigits(b: int, n: int) -> int:
    """:func:`digit_count` for a trusted base and natural ``n``."""
    if n < b:
        return 1 if n else 0
    if b == 10 and n.bit_length() <= _STR_BITS:
        return len(str(n))
    if _is_pow2(b):
        s = b.bit_length() - 1
        return -(-n.bit_length() // s)
    # smallest d with b**d > n, bracketed by bit lengths
    nb, bb = n.bit_length(), b.bit_length()
    lo = (nb - 1) // bb  # b**lo <= n
    hi = nb // (bb - 1) + 1  # b**hi > n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if b**mid > n:
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class DigitVector:
    """Little-endian digits of a natural number in ``base``.

    Canonical: no trailing (most-significant) zero digit; zero is ``()``.
    """

    base: int
    digits: Tuple[int, ...]

    def __post_init__(self):
        _check_base(self.base)
        for d in self.digits:
            if not 0 <= d < self.base:
                raise ValueError(f"digit {d} out of range for base {self.base}")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("digit vector has a leading zero")

    def __len__(self) -> int:
        return len(self.digits)

    @classmethod
    def from_list(cls, base: int, digits: Sequence[int]) -> "DigitVector":
        """Build a vector, trimming most-significant zeros."""
        digits = list(digits)
        while digits and digits[-1] == 0:
            digits.pop()
        return cls(base, tuple(digits))


def digit_list(b: int, n: int) -> list:
    """Little-endian digits of natural ``n`` as a plain list (unchecked)."""
    if n == 0:
        return []
    if b == 10:
        return list(map(int, reversed(to_decimal(n))))
    out = []
    if _is_pow2(b):
        s, mask = b.bit_length() - 1, b - 1
        while n:
            out.append(n & mask)
            n >>= s
    else:
        while n:
            n, d = divmod(n, b)
            out.append(d)
    return out


def list_value(b: int, digits: Sequence[int]) -> int:
    if b == 10 and digits:
        return parse_decimal("".join(map(str, reversed(digits))))
    n = 0
    for d in reversed(digits):
        n = n * b + d
    return n


def to_digits(b: int, n: int) -> DigitVector:
    _check_base(b)
    if n < 0:
        raise ValueError("to_digits takes a natural number")
    return DigitVector(b, tuple(digit_list(b, n)))


def from_digits(dv: DigitVector) -> int:
    b = dv.base
    for d in dv.digits:
        if not 0 <= d < b:
            raise ValueError(f"digit {d} out of range for base {b}")
    return list_value(b, dv.digits)


def _convolve(a: Sequence[int], c: Sequence[int], b: int) -> list:
    m, n = len(a), len(c)
    if min(m, n) >= _NUMPY_MIN_LEN and (b - 1) ** 2 * min(m, n) <= _INT64_MAX:
        # direct O(m*n) convolution; column sums cannot overflow int64 here
        return np.convolve(np.asarray(a, dtype=np.int64), np.asarray(c, dtype=np.int64)).tolist()
    cols = [0] * (m + n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, cj in enumerate(c, i):
                cols[j] += ai * cj
    return cols


def long_multiply(b: int, a: Sequence[int], c: Sequence[int]) -> list:
    """Digit lists in, digit list out; may carry a most-significant zero."""
    if not a or not c:
        return []
    out = []
    carry = 0
    for col in _convolve(a, c, b):
        carry, d = divmod(col + carry, b)
        out.append(d)
    while carry:
        carry, d = divmod(carry, b)
        out.append(d)
    return out


def schoolbook_mul(a: DigitVector, c: DigitVector) -> DigitVector:
    """Long multiplication, digit by digit, with a single carry pass."""
    if a.base != c.base:
        raise BaseMismatch(f"cannot multiply base {a.base} by base {c.base}")
    return DigitVector.from_list(a.base, long_multiply(a.base, a.digits, c.digits))


def schoolbook_int(b: int, x: int, y: int) -> int:
    """Signed product of two ints by long multiplication in base ``b``."""
    mag = list_value(b, long_multiply(b, digit_list(b, abs(x)), digit_list(b, abs(y))))
    return -mag if (x < 0) != (y < 0) else mag


# -- rationals ---------------------------------------------------------------

def rational(num: int, den: int = 1) -> Fraction:
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return Fraction(num, den)


def _as_fraction(a: Number) -> Fraction:
    return a if isinstance(a, Fraction) else Fraction(a)


def add(a: Number, c: Number) -> Fraction:
    return _as_fraction(a) + _as_fraction(c)


def mul(a: Number, c: Number) -> Fraction:
    return _as_fraction(a) * _as_fraction(c)


def compare(a: Number, c: Number) -> int:
    """Three-way comparison (-1, 0, 1) by cross-multiplication."""
    a, c = _as_fraction(a), _as_fraction(c)
    lhs = a.numerator * c.denominator
    rhs = c.numerator * a.denominator
    return (lhs > rhs) - (lhs < rhs)
