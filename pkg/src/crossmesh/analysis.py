"""Closed-form efficiency model for pipelined batches and its reconciliation
with counters measured by the simulators.

All ratios are :class:`fractions.Fraction`, so comparisons are exact.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


class IntegrityError(RuntimeError):
    """Measured counters contradict each other."""


@dataclass(frozen=True)
class BatchMetrics:
    N: int
    n: int
    total_steps: int
    active_cell_steps: int
    utilization_series: tuple[tuple[int, int], ...] = field(default=(), repr=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "active"])
        w.writerows(self.utilization_series)
        return buf.getvalue()


def idle_cells(n: int) -> tuple[int, int]:
    """Idle cell-steps while the first batch loads and while the last drains."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ramp = n * (n - 1) * n // 2
    return ramp, ramp


def total_cell_steps(N: int, n: int) -> int:
    _check(N, n)
    return n * n * (N * n + n - 1)


def efficiency_formula(N: int, n: int) -> Fraction:
    """N / (N + 1 - 1/n), i.e. N n^3 / ((N+1) n^3 - n^2)."""
    _check(N, n)
    return Fraction(N * n, n * (N + 1) - 1)


def efficiency_measured(m: BatchMetrics) -> Fraction:
    if m.utilization_series and sum(a for _, a in m.utilization_series) != m.active_cell_steps:
        raise IntegrityError(
            f"utilization series sums to {sum(a for _, a in m.utilization_series)}, "
            f"but active_cell_steps is {m.active_cell_steps}"
        )
    if m.total_steps < 1:
        raise IntegrityError("run recorded no steps")
    return Fraction(m.active_cell_steps, m.n * m.n * m.total_steps)


def average_steps(N: int, n: int) -> Fraction:
    """Steps per product when N products share one pipelined run."""
    _check(N, n)
    return Fraction(N * n + n - 1, N)


def standard_steps(n: int) -> int:
    return 3 * n - 2


def crosswired_steps(n: int) -> int:
    return 2 * n - 1


def _check(N: int, n: int) -> None:
    if N < 1 or n < 1:
        raise ValueError(f"need N >= 1 and n >= 1, got N={N}, n={n}")


CSV_COLUMNS = [
    "n", "N", "steps", "steps_standard", "active_cell_steps", "total_cell_steps",
    "efficiency_num", "efficiency_den", "avg_steps_num", "avg_steps_den",
]


@dataclass(frozen=True)
class ReportRow:
    n: int
    N: int
    steps: int
    steps_standard: int | None
    active_cell_steps: int
    total_cell_steps: int
    efficiency: Fraction
    efficiency_formula: Fraction
    avg_steps: Fraction

    @property
    def matches(self) -> bool:
        return self.efficiency == self.efficiency_formula

    def csv_fields(self) -> list:
        return [
            self.n, self.N, self.steps,
            "" if self.steps_standard is None else self.steps_standard,
            self.active_cell_steps, self.total_cell_steps,
            self.efficiency.numerator, self.efficiency.denominator,
            self.avg_steps.numerator, self.avg_steps.denominator,
        ]


@dataclass
class ComparisonReport:
    rows: list[ReportRow]

    @property
    def all_match(self) -> bool:
        return all(r.matches for r in self.rows)

    def mismatches(self) -> list[ReportRow]:
        return [r for r in self.rows if not r.matches]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow(r.csv_fields())
        return buf.getvalue()

    def to_json(self) -> str:
        out = []
        for r in self.rows:
            d = dict(zip(CSV_COLUMNS, r.csv_fields()))
            if d["steps_standard"] == "":
                d["steps_standard"] = None
            d["efficiency_formula"] = str(r.efficiency_formula)
            d["match"] = r.matches
            out.append(d)
        return json.dumps(out, indent=2)


def compare_report(runs: Sequence[BatchMetrics], include_baseline: bool = False) -> ComparisonReport:
    """Tabulate measured against closed-form efficiency for each run."""
    if not runs:
        raise ValueError("compare_report needs at least one run")
    rows = []
    for m in runs:
        rows.append(
            ReportRow(
                n=m.n,
                N=m.N,
                steps=m.total_steps,
                steps_standard=standard_steps(m.n) if include_baseline else None,
                active_cell_steps=m.active_cell_steps,
                total_cell_steps=m.n * m.n * m.total_steps,
                efficiency=efficiency_measured(m),
                efficiency_formula=efficiency_formula(m.N, m.n),
                avg_steps=Fraction(m.total_steps, m.N),
            )
        )
    return ComparisonReport(rows)
