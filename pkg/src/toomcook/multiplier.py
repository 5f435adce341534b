"""Recursive Toom-Cook multiplication with the theta-gated base case."""

from __future__ import annotations

from typing import Callable, List, Optional

from .core import compute_i, eval_poly, solver_for, split
from .numeric import digit_count, ndigits, schoolbook_int
from .params import ToomConfig


class NonIntegralResult(ArithmeticError):
    """Interpolation produced a non-integer coefficient (an internal bug)."""


def problem_size(config: ToomConfig, x: int, y: int) -> int:
    return digit_count(config.base, max(abs(x), abs(y)))


def sign_combine(neg_a: bool, neg_b: bool, magnitude: int) -> int:
    return -magnitude if neg_a != neg_b else magnitude


def toomk(config: ToomConfig, x: int, y: int) -> int:
    """Exact product ``x * y`` by generalized Toom-Cook under ``config``."""
    for name, v in (("x", x), ("y", y)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise TypeError(f"{name} must be an int, got {type(v).__name__}")
    return _multiply(config, x, y)


# Fault hook signature: (p_coeffs, q_coeffs, B) -> None, may mutate in place.
Fault = Callable[[List[int], List[int], int], None]


def _multiply(config: ToomConfig, x: int, y: int, node=None, fault: Optional[Fault] = None) -> int:
    # ``node`` is an optional trace recorder (see verify.TraceNode); the
    # arithmetic below is identical whether or not it is present.
    b = config.base
    ax, ay = abs(x), abs(y)
    neg = (x < 0) != (y < 0)
    p = ndigits(b, max(ax, ay))
    theta = config.theta
    if p * theta.denominator <= theta.numerator:  # config.is_base_case, inlined
        if node is not None:
            node.record_base(p)
        return sign_combine(neg, False, schoolbook_int(b, ax, ay))

    i = compute_i(config, ax, ay)
    B = b**i
    pc = split(ax, config.kx, B)
    qc = split(ay, config.ky, B)
    if fault is not None:
        fault(pc, qc, B)
        fault = None  # corrupt the outermost recursive level only
    if node is not None:
        node.record_split(p, i, B, pc, qc)

    w = []
    for j, v in enumerate(config.points):
        a = eval_poly(pc, v)
        c = eval_poly(qc, v)
        child = node.child(j, abs(a), abs(c)) if node is not None else None
        prod = _multiply(config, abs(a), abs(c), child)
        w.append(sign_combine(a < 0, c < 0, prod))

    solver = solver_for(config.points)
    den = solver.denominator
    r = []
    for j, num in enumerate(solver.solve_scaled(w)):
        q, rem = divmod(num, den)
        if rem:
            raise NonIntegralResult(f"coefficient {j} is {num}/{den}")
        r.append(q)
    return sign_combine(neg, False, eval_poly(r, B))
