"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 verification or accounting failure.
Each command prints a single-line JSON report on stdout (``bench`` prints one
per size).
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DFRHTError
from .kernel import (
    FAST_MAX_EXPONENT,
    OpCount,
    dfrht_apply,
    direct_op_counts,
    make_plan,
    make_workspace,
    predicted_op_counts,
)
from .oracle import dense_apply, dfrht_dense_matrix
from .signalio import read_signal, write_matrix, write_signal

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAILED = 3

DENSE_MAX_SIZE = 4096
VERIFY_MAX_SIZE = 128


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    n: int
    alpha: float | None
    method: str
    wall_time_ns: int
    op_count: dict | None = None
    max_abs_error: float | None = None

    def to_json(self) -> str:
        return json.dumps({k: v for k, v in asdict(self).items() if v is not None})


def _emit(doc):
    print(doc if isinstance(doc, str) else json.dumps(doc), flush=True)


def _exponent(size, limit_exp):
    if size < 2 or size & (size - 1):
        raise UsageError(f"size {size} is not a power of two >= 2")
    n = size.bit_length() - 1
    if n > limit_exp:
        raise UsageError(f"size {size} exceeds the limit 2**{limit_exp}")
    return n


def _parse_sizes(spec):
    """``"8,16"`` lists sizes; ``"2..16"`` means every power of two in the range."""
    sizes = []
    for part in filter(None, (p.strip() for p in spec.split(","))):
        try:
            if ".." in part:
                lo, hi = (int(v) for v in part.split(".."))
                _exponent(lo, FAST_MAX_EXPONENT)
                _exponent(hi, FAST_MAX_EXPONENT)
                sizes.extend(1 << e for e in range(lo.bit_length() - 1, hi.bit_length()))
            else:
                sizes.append(int(part))
        except ValueError:
            raise UsageError(f"cannot parse size list {spec!r}") from None
    if not sizes:
        raise UsageError("no sizes given")
    return sizes


def _median_ns(fn, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter_ns()
        fn()
        times.append(time.perf_counter_ns() - start)
    return int(statistics.median(times))


def _random_signals(rng, size, trials):
    for _ in range(trials):
        yield rng.standard_normal(size)
        yield rng.standard_normal(size) + 1j * rng.standard_normal(size)


def cmd_transform(args):
    x = read_signal(args.input)
    n = _exponent(x.size, FAST_MAX_EXPONENT)
    start = time.perf_counter_ns()
    count = None
    if args.method == "dense":
        if x.size > DENSE_MAX_SIZE:
            raise UsageError(f"dense method is limited to N <= {DENSE_MAX_SIZE}")
        y = dense_apply(dfrht_dense_matrix(n, args.alpha), x)
    else:
        y, count = dfrht_apply(make_plan(n, args.alpha), x)
    elapsed = time.perf_counter_ns() - start
    write_signal(args.output, y, args.format, {"n": n, "alpha": args.alpha})
    report = RunReport("transform", n, args.alpha, args.method, elapsed,
                       op_count=count.as_dict() if count else None)
    _emit(report.to_json())
    return EXIT_OK


def cmd_matrix(args):
    if args.size > DENSE_MAX_SIZE:
        raise UsageError(f"matrix output is limited to N <= {DENSE_MAX_SIZE}")
    n = _exponent(args.size, FAST_MAX_EXPONENT)
    start = time.perf_counter_ns()
    m = dfrht_dense_matrix(n, args.alpha)
    elapsed = time.perf_counter_ns() - start
    write_matrix(args.output, m.entries, args.format, {"n": n, "alpha": args.alpha})
    _emit(RunReport("matrix", n, args.alpha, "dense", elapsed).to_json())
    return EXIT_OK


def cmd_opcount(args):
    n = _exponent(args.size, FAST_MAX_EXPONENT)
    rng = np.random.default_rng(args.seed)
    predicted = predicted_op_counts(n)
    start = time.perf_counter_ns()
    _, measured = dfrht_apply(make_plan(n, rng.uniform(-2, 2)), rng.standard_normal(1 << n))
    elapsed = time.perf_counter_ns() - start
    match = measured == predicted
    _emit({
        "command": "opcount",
        "n": n,
        "N": 1 << n,
        "fast": predicted.as_dict(),
        "direct": direct_op_counts(n).as_dict(),
        "measured": measured.as_dict(),
        "match": match,
        "wall_time_ns": elapsed,
    })
    return EXIT_OK if match else EXIT_FAILED


def cmd_verify(args):
    if args.size > VERIFY_MAX_SIZE:
        raise UsageError(f"verify is limited to N <= {VERIFY_MAX_SIZE}")
    if args.trials < 1:
        raise UsageError("trials must be >= 1")
    n = _exponent(args.size, FAST_MAX_EXPONENT)
    rng = np.random.default_rng(args.seed)
    plan = make_plan(n, args.alpha)
    dense = dfrht_dense_matrix(n, args.alpha)
    workspace = make_workspace(n)
    worst = 0.0
    start = time.perf_counter_ns()
    for x in _random_signals(rng, 1 << n, args.trials):
        y, _ = dfrht_apply(plan, x, workspace)
        worst = max(worst, float(np.max(np.abs(y - dense_apply(dense, x)))))
    elapsed = time.perf_counter_ns() - start
    report = RunReport("verify", n, args.alpha, "fast-vs-dense", elapsed, max_abs_error=worst)
    _emit(report.to_json())
    return EXIT_OK if worst <= args.tol else EXIT_FAILED


def cmd_bench(args):
    sizes = _parse_sizes(args.sizes)
    exps = [_exponent(s, FAST_MAX_EXPONENT) for s in sizes]
    if args.repeats < 1:
        raise UsageError("repeats must be >= 1")
    rng = np.random.default_rng(args.seed)
    for n in exps:
        size = 1 << n
        x = rng.standard_normal(size)
        plan = make_plan(n, args.alpha)
        workspace = make_workspace(n)
        fast_ns = _median_ns(lambda: dfrht_apply(plan, x, workspace), args.repeats)
        dense_ns = None
        if size <= min(args.max_dense, DENSE_MAX_SIZE):
            m = dfrht_dense_matrix(n, args.alpha)
            dense_ns = _median_ns(lambda: dense_apply(m, x), args.repeats)
        fast, direct = predicted_op_counts(n), direct_op_counts(n)
        _emit({
            "command": "bench",
            "n": n,
            "N": size,
            "alpha": args.alpha,
            "repeats": args.repeats,
            "fast_median_ns": fast_ns,
            "dense_median_ns": dense_ns,
            "speedup": dense_ns / fast_ns if dense_ns else None,
            "fast_op_count": fast.as_dict(),
            "direct_op_count": direct.as_dict(),
            "mult_reduction": direct.real_mults / fast.real_mults,
        })
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="dfrht", description="Discrete fractional Hadamard transform.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="transform a signal file")
    t.add_argument("--alpha", type=float, required=True, help="fractional order a")
    t.add_argument("--input", required=True, help="CSV or JSON (*.json) signal file")
    t.add_argument("--output", required=True)
    t.add_argument("--method", choices=("fast", "dense"), default="fast")
    t.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    t.set_defaults(func=cmd_transform)

    m = sub.add_parser("matrix", help="write the dense N x N DFRHT matrix")
    m.add_argument("--size", type=int, required=True)
    m.add_argument("--alpha", type=float, required=True)
    m.add_argument("--output", required=True)
    m.add_argument("--format", choices=("csv", "json"), default="json")
    m.set_defaults(func=cmd_matrix)

    o = sub.add_parser("opcount", help="predicted, direct and measured operation counts")
    o.add_argument("--size", type=int, required=True)
    o.add_argument("--seed", type=int, default=0)
    o.set_defaults(func=cmd_opcount)

    v = sub.add_parser("verify", help="compare the fast path with the dense oracle")
    v.add_argument("--size", type=int, required=True)
    v.add_argument("--alpha", type=float, required=True)
    v.add_argument("--trials", type=int, default=10)
    v.add_argument("--tol", type=float, default=1e-10)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="time fast and dense application")
    b.add_argument("--sizes", required=True, help='e.g. "8,1024" or "2..4096"')
    b.add_argument("--alpha", type=float, default=0.5)
    b.add_argument("--repeats", type=int, default=5)
    b.add_argument("--max-dense", type=int, default=DENSE_MAX_SIZE,
                   help="largest N timed with the dense matrix (default: %(default)s)")
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DFRHTError) as exc:
        print(f"dfrht {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
