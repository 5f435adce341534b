"""Command-line interface: ``toomcook {mul,theta,trace,check,bench}``.

Exit status is 0 on success, 1 when ``check`` finds a violation and 2 for
usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from fractions import Fraction
from typing import List, Optional, Sequence

from .multiplier import toomk
from .numeric import parse_decimal, schoolbook_int, to_decimal
from .params import (
    BaseTooSmall, ConfigError, DuplicatePoints, SplitTooSmall, ToomConfig,
    WrongPointCount, validate,
)
from .verify import (
    count_nodes, depth_bound, dumps_trace, expand_once, random_operand,
    run_suite, trace_document, trace_multiply,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def default_points(n: int) -> List[int]:
    """``0, 1, -1, 2, -2, ...`` truncated to ``n`` points."""
    pts = [0]
    j = 1
    while len(pts) < n:
        pts += [j, -j]
        j += 1
    return pts[:n]


def parse_int(text: str, what: str) -> int:
    s = text.strip().replace("_", "")
    neg = s.startswith("-")
    body = s.lstrip("+-")
    try:
        if body[:2].lower() == "0x":
            value = int(body[2:], 16)
        else:
            value = parse_decimal(body)
    except (ValueError, IndexError):
        raise UsageError(f"{what}: not a decimal or 0x-hex integer: {text!r}") from None
    return -value if neg else value


def parse_points(text: str) -> List[int]:
    return [parse_int(p, "--points") for p in text.split(",") if p.strip()]


_FLAG_FOR_ERROR = {
    BaseTooSmall: "--base",
    SplitTooSmall: "--kx/--ky",
    WrongPointCount: "--points",
    DuplicatePoints: "--points",
}


def build_config(args) -> ToomConfig:
    points = parse_points(args.points) if args.points else default_points(args.kx + args.ky - 1)
    try:
        return validate(args.base, args.kx, args.ky, points)
    except ConfigError as exc:
        flag = _FLAG_FOR_ERROR.get(type(exc), "config")
        raise UsageError(f"{flag}: {type(exc).__name__}: {exc}") from None


def fraction_decimal(q: Fraction, places: int = 6) -> str:
    """Exact truncation of ``q`` to ``places`` decimals, no floats."""
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, rem = divmod(q.numerator, q.denominator)
    frac = rem * 10**places // q.denominator
    return f"{sign}{whole}.{frac:0{places}d}"


# -- commands ----------------------------------------------------------------

def cmd_mul(args, out) -> int:
    config = build_config(args)
    x, y = parse_int(args.x, "x"), parse_int(args.y, "y")
    print(to_decimal(toomk(config, x, y)), file=out)
    return EXIT_OK


def theta_fields(config: ToomConfig) -> dict:
    return {
        "base": str(config.base),
        "kx": str(config.kx),
        "ky": str(config.ky),
        "points": ",".join(map(str, config.points)),
        "v_max": str(config.v_max),
        "c_x": str(config.c_x),
        "c_y": str(config.c_y),
        "c": str(config.c),
        "k_min": str(config.k_min),
        "theta": str(config.theta),
        "theta_fraction": f"{config.c * config.k_min}/{config.k_min - 1}",
        "theta_decimal": fraction_decimal(config.theta),
    }


def cmd_theta(args, out) -> int:
    fields = theta_fields(build_config(args))
    if args.format == "json":
        print(json.dumps(fields, indent=1), file=out)
        return EXIT_OK
    for key in ("base", "kx", "ky", "points", "v_max", "c_x", "c_y", "c", "k_min"):
        print(f"{key:<8} {fields[key]}", file=out)
    print(f"{'theta':<8} {fields['theta']} (= {fields['theta_fraction']}) ~ {fields['theta_decimal']}", file=out)
    return EXIT_OK


def cmd_trace(args, out) -> int:
    config = build_config(args)
    x, y = parse_int(args.x, "x"), parse_int(args.y, "y")
    if args.expand_once:
        for a, b in expand_once(config, x, y):
            print(f"{to_decimal(a)} * {to_decimal(b)}", file=out)
        return EXIT_OK
    product, root = trace_multiply(config, x, y)
    print(dumps_trace(trace_document(config, x, y, product, root)), file=out)
    return EXIT_OK


def _corrupt_first_coefficient(pc, qc, B):
    pc[0] += B


def cmd_check(args, out) -> int:
    config = build_config(args)
    if args.runs < 1 or args.max_digits < 1:
        raise UsageError("--runs and --max-digits must be positive")
    fault = _corrupt_first_coefficient if args.inject_fault else None
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    res = run_suite(config, args.runs, args.seed, args.max_digits,
                    log_sizes=args.log_sizes, fault=fault, workers=args.jobs)
    rep = res.report
    lemmas = ["structure", "piece_i_bound", "eval_bound", "decrease_property", "depth_bound"]
    counts = {name: 0 for name in lemmas}
    for v in rep.violations:
        key = "eval_bound" if v.lemma.startswith("eval_bound") else v.lemma
        counts[key if key in counts else "structure"] += 1
    summary = {
        "config": theta_fields(config),
        "runs": res.runs,
        "seed": args.seed,
        "max_digits": args.max_digits,
        "nodes": rep.node_count,
        "max_depth": rep.max_depth,
        "checks": {name: {"checked": rep.checks_run.get(name, 0), "violations": counts[name]} for name in lemmas},
        "oracle_mismatches": res.oracle_mismatches,
        "nonintegral_results": res.nonintegral,
        "passed": res.passed,
    }
    if args.format == "json":
        print(json.dumps(summary, indent=1), file=out)
    else:
        c = summary["config"]
        print(f"config     base={c['base']} kx={c['kx']} ky={c['ky']} points={c['points']} theta={c['theta']}", file=out)
        print(f"runs       {res.runs} (seed {args.seed}, max digits {args.max_digits})", file=out)
        print(f"nodes      {rep.node_count}", file=out)
        print(f"max depth  {rep.max_depth}", file=out)
        for name in lemmas:
            s = summary["checks"][name]
            print(f"{name:<18} checked={s['checked']:<10} violations={s['violations']}", file=out)
        print(f"{'oracle':<18} checked={res.runs:<10} mismatches={res.oracle_mismatches}", file=out)
        print(f"{'nonintegral':<18} errors={res.nonintegral}", file=out)
        for v in rep.violations[:10]:
            print(f"  ! {v}", file=out)
        print("PASS" if res.passed else "FAIL", file=out)
    if args.plot and res.widest_profile:
        from .plotting import plot_depth_profile

        bounds = {n: float(depth_bound(config, res.widest_p0, n)) for n in res.widest_profile}
        plot_depth_profile(res.widest_profile, bounds, float(config.theta), args.plot,
                           title=f"P0 = {res.widest_p0}")
    return EXIT_OK if res.passed else EXIT_VIOLATION


def bench_sizes(args) -> List[int]:
    if args.sizes:
        sizes = [parse_int(s, "--sizes") for s in args.sizes.split(",") if s.strip()]
    else:
        lo, hi, step = args.ladder
        sizes = []
        s = lo
        while s <= hi:
            sizes.append(s)
            s *= step
    if not sizes or min(sizes) < 1:
        raise UsageError("--sizes/--ladder: sizes must be positive")
    return sizes


def cmd_bench(args, out) -> int:
    config = build_config(args)
    sizes = bench_sizes(args)
    rng = random.Random(args.seed)
    rows = []
    for n in sizes:
        x = random_operand(rng, config.base, n)
        y = random_operand(rng, config.base, n)
        nodes = count_nodes(config, x, y)
        t0 = time.perf_counter()
        product = toomk(config, x, y)
        t1 = time.perf_counter()
        oracle = schoolbook_int(config.base, x, y)
        t2 = time.perf_counter()
        if product != oracle:
            raise AssertionError(f"toomk disagrees with schoolbook at {n} digits")
        rows.append({"size_digits": n, "toomk_nodes": nodes,
                     "toomk_time": t1 - t0, "schoolbook_time": t2 - t1})
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["size_digits", "toomk_nodes", "toomk_time", "schoolbook_time"])
    for r in rows:
        writer.writerow([r["size_digits"], r["toomk_nodes"], f"{r['toomk_time']:.6f}", f"{r['schoolbook_time']:.6f}"])
    # growth note goes to stderr so stdout stays plain CSV
    if config.kx == config.ky and len(rows) > 1:
        k = config.kx
        print(f"# node-count growth (informational): expect ~{2 * k - 1} per {k}x size step, +-20%",
              file=sys.stderr)
        for prev, cur in zip(rows, rows[1:]):
            step = Fraction(cur["size_digits"], prev["size_digits"])
            ratio = Fraction(cur["toomk_nodes"], prev["toomk_nodes"])
            print(f"#   {prev['size_digits']} -> {cur['size_digits']} (x{step}): nodes x{fraction_decimal(ratio, 3)}",
                  file=sys.stderr)
    if args.plot:
        from .plotting import plot_bench

        plot_bench(rows, config.k_min, args.plot)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def _add_config_flags(p):
    p.add_argument("--base", type=int, default=10, help="digit base b > 1 (default 10)")
    p.add_argument("--kx", type=int, default=3, help="pieces for the first operand (default 3)")
    p.add_argument("--ky", type=int, default=3, help="pieces for the second operand (default 3)")
    p.add_argument("--points", default=None,
                   help="comma-separated distinct integers, kx+ky-1 of them "
                        "(default 0,1,-1,2,-2,...); write --points=-1,0,1 if the first is negative")


def _add_operands(p):
    p.add_argument("x", help="signed decimal or 0x-hex integer")
    p.add_argument("y", help="signed decimal or 0x-hex integer")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toomcook", description="Generalized Toom-Cook multiplication.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mul", help="print the exact product")
    _add_config_flags(p)
    _add_operands(p)
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("theta", help="print the derived constants and base-case threshold")
    _add_config_flags(p)
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("trace", help="print the recursion tree as JSON")
    _add_config_flags(p)
    _add_operands(p)
    p.add_argument("--expand-once", action="store_true",
                   help="print one level of evaluated factor pairs, ignoring theta")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("check", help="trace random products and check the size lemmas")
    _add_config_flags(p)
    p.add_argument("--runs", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-digits", type=int, default=300)
    p.add_argument("--log-sizes", action="store_true", help="draw operand sizes log-uniformly")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (report is identical)")
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.add_argument("--plot", metavar="FILE", help="write a depth-profile figure")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bench", help="CSV of node counts and timings against schoolbook")
    _add_config_flags(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--sizes", help="comma-separated operand sizes in digits")
    g.add_argument("--ladder", nargs=3, type=int, metavar=("MIN", "MAX", "FACTOR"),
                   default=[100, 2700, 3], help="geometric size ladder (default 100 2700 3)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--plot", metavar="FILE", help="write a log-log figure of the table")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"toomcook {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
