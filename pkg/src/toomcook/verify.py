"""Recursion traces and runtime checks of the termination lemmas.

A trace is recorded by running the ordinary multiplier with a
:class:`TraceNode` attached; the checkers then walk the finished tree.
Every checker returns a :class:`CheckReport` and never raises on a
violation.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from .core import compute_i, eval_poly, split
from .multiplier import Fault, _multiply
from .numeric import compare, ndigits, to_decimal
from .params import ToomConfig, subproblem_bound

SCHEMA = "toom-trace/1"
Path = Tuple[int, ...]


@dataclass(slots=True)
class TraceNode:
    depth: int
    x: int
    y: int
    point_index: Optional[int] = None
    p: int = 0
    base_case: bool = True
    i: Optional[int] = None
    b_power: Optional[int] = None
    p_coeffs: Tuple[int, ...] = ()
    q_coeffs: Tuple[int, ...] = ()
    children: List["TraceNode"] = field(default_factory=list)

    # recorder protocol used by multiplier._multiply
    def record_base(self, p: int) -> None:
        self.p = p
        self.base_case = True

    def record_split(self, p: int, i: int, B: int, pc, qc) -> None:
        self.p = p
        self.base_case = False
        self.i = i
        self.b_power = B
        self.p_coeffs = tuple(pc)
        self.q_coeffs = tuple(qc)

    def child(self, point_index: int, x: int, y: int) -> "TraceNode":
        node = TraceNode(self.depth + 1, x, y, point_index)
        self.children.append(node)
        return node

    def walk(self, path: Path = ()) -> Iterator[Tuple[Path, "TraceNode"]]:
        stack = [(path, self)]
        while stack:
            path, node = stack.pop()
            yield path, node
            for ch in reversed(node.children):
                stack.append((path + (ch.point_index,), ch))

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "x": to_decimal(self.x),
            "y": to_decimal(self.y),
            "p": self.p,
            "base_case": self.base_case,
            "i": self.i,
            "b_power": None if self.b_power is None else to_decimal(self.b_power),
            "point_index": self.point_index,
            "children": [c.to_dict() for c in self.children],
        }


class _NodeCounter:
    """Recorder that only counts calls; same protocol as TraceNode."""

    def __init__(self):
        self.count = 1

    def record_base(self, p):
        pass

    def record_split(self, p, i, B, pc, qc):
        pass

    def child(self, point_index, x, y):
        self.count += 1
        return self


def trace_multiply(config: ToomConfig, x: int, y: int, fault: Optional[Fault] = None) -> Tuple[int, TraceNode]:
    root = TraceNode(0, x, y)
    product = _multiply(config, x, y, root, fault)
    return product, root


def count_nodes(config: ToomConfig, x: int, y: int) -> int:
    counter = _NodeCounter()
    _multiply(config, x, y, counter)
    return counter.count


def trace_document(config: ToomConfig, x: int, y: int, product: int, root: TraceNode) -> dict:
    return {
        "schema": SCHEMA,
        "config": {
            "base": config.base,
            "kx": config.kx,
            "ky": config.ky,
            "points": [str(v) for v in config.points],
            "theta": f"{config.theta.numerator}/{config.theta.denominator}",
        },
        "x": to_decimal(x),
        "y": to_decimal(y),
        "product": to_decimal(product),
        "root": root.to_dict(),
    }


def dumps_trace(doc: dict) -> str:
    return json.dumps(doc, indent=1)


def expand_once(config: ToomConfig, x: int, y: int) -> List[Tuple[int, int]]:
    """Evaluated split pairs of one recursive level, ignoring theta."""
    ax, ay = abs(x), abs(y)
    B = config.base ** compute_i(config, ax, ay)
    pc = split(ax, config.kx, B)
    qc = split(ay, config.ky, B)
    return [(eval_poly(pc, v), eval_poly(qc, v)) for v in config.points]


# -- reports -----------------------------------------------------------------

@dataclass
class Violation:
    lemma: str
    path: Path
    observed: object
    bound: object

    def __str__(self):
        where = "/".join(map(str, self.path)) or "root"
        return f"{self.lemma} at {where}: observed {self.observed}, bound {self.bound}"


@dataclass
class CheckReport:
    checks_run: Dict[str, int] = field(default_factory=dict)
    violations: List[Violation] = field(default_factory=list)
    node_count: int = 0
    max_depth: int = 0
    max_p_by_depth: Dict[int, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def count(self, lemma: str) -> int:
        return sum(1 for v in self.violations if v.lemma == lemma)

    def merge(self, other: "CheckReport") -> "CheckReport":
        for k, n in other.checks_run.items():
            self.checks_run[k] = self.checks_run.get(k, 0) + n
        self.violations.extend(other.violations)
        self.node_count += other.node_count
        self.max_depth = max(self.max_depth, other.max_depth)
        for d, p in other.max_p_by_depth.items():
            self.max_p_by_depth[d] = max(p, self.max_p_by_depth.get(d, 0))
        return self


def _report(trace: TraceNode) -> CheckReport:
    rep = CheckReport()
    for _, node in trace.walk():
        rep.node_count += 1
        rep.max_depth = max(rep.max_depth, node.depth)
        rep.max_p_by_depth[node.depth] = max(node.p, rep.max_p_by_depth.get(node.depth, 0))
    return rep


def _structure_at(node, path, config, out):
    p = ndigits(config.base, max(abs(node.x), abs(node.y)))
    if node.p != p:
        out.append(Violation("problem_size", path, node.p, p))
    if node.base_case != config.is_base_case(node.p):
        out.append(Violation("base_case_flag", path, node.base_case, node.p))
    if node.depth > 0 and (node.x < 0 or node.y < 0):
        out.append(Violation("negative_operand", path, (node.x, node.y), 0))
    if node.base_case:
        if node.children:
            out.append(Violation("base_case_children", path, len(node.children), 0))
        return 1
    if len(node.children) != config.n_points:
        out.append(Violation("child_count", path, len(node.children), config.n_points))
    for ch in node.children:
        v = config.points[ch.point_index]
        want = (abs(eval_poly(node.p_coeffs, v)), abs(eval_poly(node.q_coeffs, v)))
        if (ch.x, ch.y) != want:
            out.append(Violation("child_operands", path + (ch.point_index,), (ch.x, ch.y), want))
    return 1


def _piece_bound_at(node, path, config, out):
    if node.base_case:
        return 0
    b, i = config.base, node.i
    for e in node.p_coeffs + node.q_coeffs:
        d = ndigits(b, abs(e))
        if d > i:
            out.append(Violation("piece_i_bound", path, d, i))
    return len(node.p_coeffs) + len(node.q_coeffs)


def _eval_bounds_at(node, path, config, out):
    if node.base_case:
        return 0
    b = config.base
    bound = subproblem_bound(config, node.p)
    for ch in node.children:
        for lemma, operand in (("eval_bound_x", ch.x), ("eval_bound_y", ch.y)):
            d = ndigits(b, abs(operand))
            if d > bound:
                out.append(Violation(lemma, path + (ch.point_index,), d, bound))
    return 2 * len(node.children)


def _decrease_at(node, path, config, out):
    if config.is_base_case(node.p):
        return 0
    for ch in node.children:
        if ch.p >= node.p:
            out.append(Violation("decrease_property", path + (ch.point_index,), ch.p, node.p - 1))
    return len(node.children)


_NODE_CHECKS = {
    "structure": _structure_at,
    "piece_i_bound": _piece_bound_at,
    "eval_bound": _eval_bounds_at,
    "decrease_property": _decrease_at,
}


def _run_node_checks(trace: TraceNode, config: ToomConfig, names) -> CheckReport:
    rep = CheckReport()
    funcs = [(name, _NODE_CHECKS[name]) for name in names]
    counts = dict.fromkeys(names, 0)
    out = rep.violations
    for path, node in trace.walk():
        for name, fn in funcs:
            counts[name] += fn(node, path, config, out)
    rep.checks_run.update(counts)
    return rep


def check_structure(trace: TraceNode, config: ToomConfig) -> CheckReport:
    """Node-local consistency: sizes, base-case flags, child operands."""
    return _run_node_checks(trace, config, ["structure"])


def check_piece_bound(trace: TraceNode, config: ToomConfig) -> CheckReport:
    """Every split coefficient has at most ``i`` base-b digits."""
    return _run_node_checks(trace, config, ["piece_i_bound"])


def check_eval_bounds(trace: TraceNode, config: ToomConfig) -> CheckReport:
    """Child operands stay within ``floor(P / k_min) + C`` digits."""
    return _run_node_checks(trace, config, ["eval_bound"])


def check_strict_decrease(trace: TraceNode, config: ToomConfig) -> CheckReport:
    """Above theta, every child is strictly smaller than its parent."""
    return _run_node_checks(trace, config, ["decrease_property"])


def depth_bound(config: ToomConfig, p0: int, n: int) -> Fraction:
    """``p0 / k^n + sum_{j<n} c / k^j`` with ``k = k_min``, exactly."""
    k = config.k_min
    return Fraction(p0, k**n) + sum((Fraction(config.c, k**j) for j in range(n)), Fraction(0))


def depth_limit(config: ToomConfig, p0: int) -> int:
    """Smallest depth at which the geometric bound forces the base case.

    The bound itself stays above theta whenever ``p0 > theta``, but problem
    sizes are integers, so the floor of the bound is what has to drop to
    theta.
    """
    n = 0
    while compare(math.floor(depth_bound(config, p0, n)), config.theta) > 0:
        n += 1
    return n


def check_depth_bound(trace: TraceNode, config: ToomConfig) -> CheckReport:
    rep = _report(trace)
    p0 = trace.p
    for n, observed in sorted(rep.max_p_by_depth.items()):
        bound = depth_bound(config, p0, n)
        if compare(observed, bound) > 0:
            rep.violations.append(Violation("depth_bound", (n,), observed, bound))
    limit = depth_limit(config, p0)
    if rep.max_depth > limit:
        rep.violations.append(Violation("max_depth", (), rep.max_depth, limit))
    rep.checks_run["depth_bound"] = len(rep.max_p_by_depth) + 1
    return rep


CHECKERS = (check_structure, check_piece_bound, check_eval_bounds, check_strict_decrease, check_depth_bound)


def check_all(trace: TraceNode, config: ToomConfig) -> CheckReport:
    """Every checker above, sharing a single walk for the per-node ones."""
    rep = check_depth_bound(trace, config)
    sub = _run_node_checks(trace, config, list(_NODE_CHECKS))
    rep.checks_run.update(sub.checks_run)
    rep.violations.extend(sub.violations)
    return rep


def random_operand(rng: random.Random, base: int, n_digits: int) -> int:
    """Uniform natural with exactly ``n_digits`` base-``base`` digits."""
    if n_digits <= 0:
        return 0
    return rng.randrange(base ** (n_digits - 1), base**n_digits)


def sample_operands(rng: random.Random, base: int, max_digits: int, log_sizes: bool = False) -> Tuple[int, int]:
    """Random signed pair with at most ``max_digits`` base-``base`` digits each.

    Sizes are uniform on ``[0, max_digits]``, or log-uniform on
    ``[1, max_digits]`` with ``log_sizes``.
    """
    def size():
        if log_sizes:
            return min(max_digits, int(math.exp(rng.uniform(0, math.log(max_digits + 1)))))
        return rng.randint(0, max_digits)

    x = random_operand(rng, base, size()) * rng.choice((1, -1))
    y = random_operand(rng, base, size()) * rng.choice((1, -1))
    return x, y


def node_count_growth(config: ToomConfig, n_digits: int, factor: Optional[int] = None,
                      rng: Optional[random.Random] = None) -> Fraction:
    """Ratio of recursion node counts when the operand size grows ``factor``-fold."""
    rng = rng or random.Random(0)
    factor = factor or config.k_min
    b = config.base
    small = count_nodes(config, random_operand(rng, b, n_digits), random_operand(rng, b, n_digits))
    big_n = factor * n_digits
    big = count_nodes(config, random_operand(rng, b, big_n), random_operand(rng, b, big_n))
    return Fraction(big, small)


@dataclass
class SuiteResult:
    """Aggregate of many traced, checked, oracle-compared multiplications."""

    config: ToomConfig
    runs: int = 0
    report: CheckReport = field(default_factory=CheckReport)
    oracle_mismatches: int = 0
    nonintegral: int = 0
    # depth profile of the run with the largest root problem size
    widest_p0: int = -1
    widest_profile: Dict[int, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.report.passed and not self.oracle_mismatches and not self.nonintegral


def _check_one(config: ToomConfig, x: int, y: int, fault: Optional[Fault]):
    from .multiplier import NonIntegralResult
    from .numeric import schoolbook_int

    try:
        product, root = trace_multiply(config, x, y, fault)
    except NonIntegralResult:
        return None, False
    return check_all(root, config), product == schoolbook_int(config.base, x, y)


def run_suite(config: ToomConfig, runs: int, seed: int, max_digits: int, *,
              log_sizes: bool = False, pin_max: bool = False,
              fault: Optional[Fault] = None, workers: int = 1) -> SuiteResult:
    """Trace ``runs`` random multiplications and check every lemma on each.

    With ``pin_max`` the first run uses two operands of exactly
    ``max_digits`` digits.  Operands depend only on ``seed``; with
    ``workers > 1`` runs are spread over processes and merged in run
    order, so the result is the same as a serial run.
    """
    rng = random.Random(seed)
    b = config.base
    cases = []
    for run in range(runs):
        if pin_max and run == 0:
            cases.append((random_operand(rng, b, max_digits), -random_operand(rng, b, max_digits)))
        else:
            cases.append(sample_operands(rng, b, max_digits, log_sizes))

    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            outcomes = pool.map(_check_one, *zip(*((config, x, y, fault) for x, y in cases)))
            outcomes = list(outcomes)
    else:
        outcomes = (_check_one(config, x, y, fault) for x, y in cases)

    res = SuiteResult(config)
    for (x, y), (rep, oracle_ok) in zip(cases, outcomes):
        res.runs += 1
        if rep is None:
            res.nonintegral += 1
            continue
        if not oracle_ok:
            res.oracle_mismatches += 1
        p0 = rep.max_p_by_depth.get(0, 0)
        if p0 > res.widest_p0:
            res.widest_p0 = p0
            res.widest_profile = dict(rep.max_p_by_depth)
        res.report.merge(rep)
    return res
