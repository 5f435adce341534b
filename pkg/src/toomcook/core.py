"""One level of Toom-Cook: split, evaluate, interpolate, recompose."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from .numeric import ndigits
from .params import ToomConfig


class SingularMatrix(ArithmeticError):
    """Raised when the Vandermonde system has no unique solution."""


def compute_i(config: ToomConfig, x: int, y: int) -> int:
    """Chunk length in base-b digits: the larger of the two ceiling splits."""
    b = config.base
    dx, dy = ndigits(b, abs(x)), ndigits(b, abs(y))
    return max((dx + config.kx - 1) // config.kx, (dy + config.ky - 1) // config.ky)


def compute_B(config: ToomConfig, i: int) -> int:
    return config.base**i


def split(z: int, k: int, B: int) -> List[int]:
    """Little-endian base-``B`` chunks of ``z``, exactly ``k`` of them.

    Every chunk is ``floor(z / B**j) mod B``, so anything at or above
    ``B**k`` is dropped.
    """
    if B == 1:
        return [0] * k
    out = []
    for _ in range(k):
        z, r = divmod(z, B)
        out.append(r)
    return out


def eval_poly(coeffs: Sequence[int], point: int) -> int:
    acc = 0
    for s in reversed(coeffs):
        acc = acc * point + s
    return acc


def vandermonde(points: Sequence[int]) -> List[List[Fraction]]:
    """Rows indexed by points, columns by powers ``0 .. n-1``."""
    n = len(points)
    return [[Fraction(v) ** j for j in range(n)] for v in points]


def _eliminate(rows: List[List[Fraction]], n: int) -> None:
    """Gauss-Jordan in place on an augmented matrix with ``n`` leading columns."""
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrix(f"no pivot in column {col}")
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
        prow = rows[col]
        inv = 1 / prow[col]
        prow[:] = [e * inv for e in prow]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r][:] = [e - f * pe for e, pe in zip(rows[r], prow)]


def interpolate(points: Sequence[int], w: Sequence[int]) -> List[Fraction]:
    """Solve ``V r = w`` exactly for the coefficient vector ``r``."""
    n = len(points)
    if len(w) != n:
        raise ValueError(f"{n} points but {len(w)} values")
    rows = [row + [Fraction(wi)] for row, wi in zip(vandermonde(points), w)]
    _eliminate(rows, n)
    return [row[n] for row in rows]


def recompose(r: Sequence[Fraction], B: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(r):
        acc = acc * B + c
    return acc


class VandermondeSolver:
    """Reusable exact solver for one point set.

    The elimination is run once against the identity; ``V^-1`` is then
    stored as an integer matrix over a common denominator so each solve is
    an integer mat-vec product.
    """

    def __init__(self, points: Sequence[int]):
        self.points = tuple(points)
        n = len(self.points)
        rows = [row + [Fraction(int(r == c)) for c in range(n)]
                for r, row in enumerate(vandermonde(self.points))]
        _eliminate(rows, n)
        inverse = [row[n:] for row in rows]
        den = math.lcm(*(e.denominator for row in inverse for e in row))
        self.denominator = den
        self.numerators: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(e.numerator * (den // e.denominator) for e in row) for row in inverse
        )

    def solve(self, w: Sequence[int]) -> List[Fraction]:
        d = self.denominator
        return [Fraction(sum(a * b for a, b in zip(row, w)), d) for row in self.numerators]

    def solve_scaled(self, w: Sequence[int]) -> List[int]:
        """Numerators of the solution over :attr:`denominator`."""
        return [sum(a * b for a, b in zip(row, w)) for row in self.numerators]


@lru_cache(maxsize=64)
def solver_for(points: Tuple[int, ...]) -> VandermondeSolver:
    return VandermondeSolver(points)
