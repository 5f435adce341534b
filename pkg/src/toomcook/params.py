"""Toom-Cook configurations and their operand-independent constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from .numeric import digit_count


class ConfigError(ValueError):
    """Base class for rejected configurations."""


class InvalidParameter(ConfigError):
    pass


class BaseTooSmall(ConfigError):
    pass


class SplitTooSmall(ConfigError):
    pass


class WrongPointCount(ConfigError):
    pass


class DuplicatePoints(ConfigError):
    def __init__(self, i: int, j: int, value: int):
        super().__init__(f"points[{i}] and points[{j}] are both {value}")
        self.indices = (i, j)
        self.value = value


def v_max(points: Sequence[int]) -> int:
    """Largest absolute value among the evaluation points."""
    return max(abs(v) for v in points)


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


@dataclass(frozen=True)
class ToomConfig:
    """A validated ``(b, kx, ky, points)`` with derived constants cached.

    Build instances with :func:`validate`; the derived fields are filled in
    by ``__post_init__`` and are never passed by callers.
    """

    base: int
    kx: int
    ky: int
    points: Tuple[int, ...]
    v_max: int = field(init=False)
    c_x: int = field(init=False)
    c_y: int = field(init=False)
    c: int = field(init=False)
    k_min: int = field(init=False)
    theta: Fraction = field(init=False)

    def __post_init__(self):
        set_ = object.__setattr__
        vm = v_max(self.points)
        c_x = digit_count(self.base, sum(vm**j for j in range(self.kx)))
        c_y = digit_count(self.base, sum(vm**j for j in range(self.ky)))
        c = max(c_x, c_y) + 1
        k_min = min(self.kx, self.ky)
        set_(self, "v_max", vm)
        set_(self, "c_x", c_x)
        set_(self, "c_y", c_y)
        set_(self, "c", c)
        set_(self, "k_min", k_min)
        set_(self, "theta", Fraction(c * k_min, k_min - 1))

    @property
    def n_points(self) -> int:
        return self.kx + self.ky - 1

    def is_base_case(self, p: int) -> bool:
        """``p <= theta``, decided exactly by cross-multiplication."""
        return p * self.theta.denominator <= self.theta.numerator

    def describe(self) -> dict:
        return {
            "base": self.base,
            "kx": self.kx,
            "ky": self.ky,
            "points": list(self.points),
            "v_max": self.v_max,
            "c_x": self.c_x,
            "c_y": self.c_y,
            "c": self.c,
            "k_min": self.k_min,
            "theta": self.theta,
        }


def validate(b, kx, ky, points: Iterable) -> ToomConfig:
    """Check a configuration and return it with its constants derived.

    Raises a :class:`ConfigError` subclass naming the first problem found.
    """
    for name, val in (("base", b), ("kx", kx), ("ky", ky)):
        if not _is_int(val):
            raise InvalidParameter(f"{name} must be an integer, got {val!r}")
    if b <= 1:
        raise BaseTooSmall(f"base must be > 1, got {b}")
    if kx <= 1 or ky <= 1:
        raise SplitTooSmall(f"kx and ky must both be > 1, got kx={kx}, ky={ky}")
    try:
        pts = tuple(points)
    except TypeError:
        raise InvalidParameter(f"points must be a sequence of integers, got {points!r}") from None
    for v in pts:
        if not _is_int(v):
            raise InvalidParameter(f"evaluation point {v!r} is not an integer")
    need = kx + ky - 1
    if len(pts) != need:
        raise WrongPointCount(f"kx={kx}, ky={ky} needs {need} points, got {len(pts)}")
    seen = {}
    for j, v in enumerate(pts):
        if v in seen:
            raise DuplicatePoints(seen[v], j, v)
        seen[v] = j
    return ToomConfig(b, kx, ky, pts)


def c_constants(config: ToomConfig) -> Tuple[int, int, int]:
    return config.c_x, config.c_y, config.c


def theta(config: ToomConfig) -> Fraction:
    return config.theta


def subproblem_bound(config: ToomConfig, p: int) -> int:
    """Upper bound on the digit count of any child operand of a size-``p`` node."""
    return p // config.k_min + config.c
