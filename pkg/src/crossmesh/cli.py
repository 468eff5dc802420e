"""Command-line front end.

    crossmesh multiply --engine crosswired --n 4 --seed 42
    crossmesh batch --n 4 --count 3 --metrics m.csv
    crossmesh tables --n 7 --check-paper
    crossmesh compare --n 2..12 --counts 1,10,100 --baseline

Exit status: 0 on success, 1 when a built-in check fails, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .analysis import BatchMetrics, compare_report
from .baseline import run_standard
from .engine import run_batch, run_single, write_trace
from .matrix import Matrix, diff, matmul_oracle, symbolic_operands
from .reference import compare_with_published, published_orders
from .topology import arrival_order, assignment_table, check_symmetries


def parse_range(text: str) -> list[int]:
    """``"4"``, ``"2..12"`` or ``"2,4,8"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from None
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError(f"range {text!r} must be non-empty and >= 1")
    return values


def positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def make_pair(n: int, mode: str, rng: random.Random) -> tuple[Matrix, Matrix]:
    if mode == "symbolic":
        return symbolic_operands(n)
    return Matrix.random(n, rng), Matrix.random(n, rng)


def _emit(text: str, out: str | None, name: str) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    path = Path(out)
    if path.suffix == "" or path.is_dir():
        path.mkdir(parents=True, exist_ok=True)
        path = path / name
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path}")


def cmd_multiply(args) -> int:
    rng = random.Random(args.seed)
    a, b = make_pair(args.n, args.mode, rng)
    if args.engine == "standard":
        res = run_standard(a, b, trace=bool(args.trace))
    else:
        res = run_single(a, b, trace=bool(args.trace), exit_side=args.exit_side)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fp:
            write_trace(res.trace, fp)
    expected = matmul_oracle(a, b)
    print(res.product)
    bad = diff(res.product, expected)
    verdict = "match" if not bad else "mismatch"
    print(f"steps={res.steps} oracle={verdict}")
    for i, j, got, want in bad:
        print(f"  ({i},{j}): simulated={got} oracle={want}")
    return 0 if not bad else 1


def cmd_batch(args) -> int:
    rng = random.Random(args.seed)
    pairs = [make_pair(args.n, args.mode, rng) for _ in range(args.count)]
    res = run_batch(pairs, trace=bool(args.trace), exit_side=args.exit_side)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fp:
            write_trace(res.trace, fp)
    if args.metrics:
        Path(args.metrics).write_text(res.metrics.to_csv(), encoding="utf-8")

    status = 0
    for m, ((a, b), got) in enumerate(zip(pairs, res.products)):
        if got != matmul_oracle(a, b):
            print(f"batch {m}: product differs from oracle", file=sys.stderr)
            status = 1
    report = compare_report([res.metrics])
    row = report.rows[0]
    if args.format == "json":
        _emit(report.to_json(), args.out, "report.json")
    elif args.format == "csv":
        _emit(report.to_csv(), args.out, "report.csv")
    print(
        f"n={row.n} N={row.N} steps={row.steps} active_cell_steps={row.active_cell_steps} "
        f"efficiency={row.efficiency} formula={row.efficiency_formula} avg_steps={row.avg_steps}"
    )
    if not row.matches:
        print(f"efficiency mismatch: measured={row.efficiency} formula={row.efficiency_formula}", file=sys.stderr)
        status = 1
    return status


def cmd_tables(args) -> int:
    n = args.n
    table = assignment_table(n)
    order = arrival_order(n, exit_side=args.exit_side, table=table)
    report = check_symmetries(table)
    ext = args.format or "csv"
    if ext == "json":
        _emit(table.to_json(), args.out, f"assignment_n{n}.json")
        _emit(order.to_json(), args.out, f"arrival_n{n}.json")
    else:
        _emit(table.to_csv(), args.out, f"assignment_n{n}.csv")
        _emit(order.to_csv(), args.out, f"arrival_n{n}.csv")
    _emit(json.dumps(report.to_dict(), indent=2), args.out, f"symmetry_n{n}.json")

    status = 0 if report.ok else 1
    if not report.ok:
        print(f"symmetry check failed with {len(report.discrepancies)} discrepancies", file=sys.stderr)
    if args.check_paper:
        if n not in published_orders():
            print(f"no published table for n={n} (available: {published_orders()})")
        else:
            if args.exit_side != "left":
                print("note: published arrival order assumes left exit; comparing left-exit ranks")
            cmp = compare_with_published(n)
            print(cmp.summary())
            if cmp.unexpected:
                status = 1
    return status


def _sweep_one(task: tuple[int, int, int, str]) -> tuple[BatchMetrics, bool]:
    n, count, seed, mode = task
    rng = random.Random(f"{seed}:{n}:{count}")
    pairs = [make_pair(n, mode, rng) for _ in range(count)]
    res = run_batch(pairs)
    ok = all(got == matmul_oracle(a, b) for (a, b), got in zip(pairs, res.products))
    return res.metrics, ok


def cmd_compare(args) -> int:
    tasks = [(n, count, args.seed, args.mode) for n in args.n for count in args.counts]
    if args.jobs == 1 or len(tasks) == 1:
        results = [_sweep_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_one, tasks))
    report = compare_report([m for m, _ in results], include_baseline=args.baseline)
    text = report.to_json() if args.format == "json" else report.to_csv()
    _emit(text, args.out, "compare." + (args.format or "csv"))

    status = 0
    for row in report.mismatches():
        print(f"n={row.n} N={row.N}: measured={row.efficiency} formula={row.efficiency_formula}", file=sys.stderr)
        status = 1
    for (n, count, _, _), (_, ok) in zip(tasks, results):
        if not ok:
            print(f"n={n} N={count}: product differs from oracle", file=sys.stderr)
            status = 1
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--mode", choices=["int", "symbolic"], default="int")
    common.add_argument("--format", choices=["json", "csv"], default=None)
    common.add_argument("--out", default=None, help="output file or directory (default: stdout)")
    common.add_argument("--exit-side", choices=["left", "right"], default="left")

    p = argparse.ArgumentParser(prog="crossmesh", description="Cross-wired mesh matrix multiplication simulator")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("multiply", parents=[common], help="multiply one pair and check against the oracle")
    m.add_argument("--n", type=positive, default=4)
    m.add_argument("--engine", choices=["crosswired", "standard"], default="crosswired")
    m.add_argument("--trace", default=None, help="write a JSON-lines trace here")
    m.set_defaults(func=cmd_multiply)

    b = sub.add_parser("batch", parents=[common], help="pipeline several pairs and reconcile efficiency")
    b.add_argument("--n", type=positive, default=4)
    b.add_argument("--count", type=positive, default=1)
    b.add_argument("--metrics", default=None, help="write the utilization series CSV here")
    b.add_argument("--trace", default=None)
    b.set_defaults(func=cmd_batch)

    t = sub.add_parser("tables", parents=[common], help="assignment and arrival-order tables")
    t.add_argument("--n", type=positive, default=4)
    t.add_argument("--check-paper", action="store_true", help="compare with the published n=4 and n=7 tables")
    t.set_defaults(func=cmd_tables)

    c = sub.add_parser("compare", parents=[common], help="sweep (n, N) and tabulate efficiency")
    c.add_argument("--n", type=parse_range, default=[4])
    c.add_argument("--counts", type=parse_range, default=[1])
    c.add_argument("--count", dest="counts", type=parse_range)
    c.add_argument("--baseline", action="store_true", help="include standard mesh step counts")
    c.add_argument("--jobs", type=positive, default=min(4, os.cpu_count() or 1))
    c.set_defaults(func=cmd_compare)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
