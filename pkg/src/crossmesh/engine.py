"""Cycle-accurate simulation of the cross-wired mesh.

One call to :meth:`MeshState.step` is one synchronous clock: row 1 latches
the next column of operands from the active batch, every cell holding both
an a-value and a b-value multiplies them into its accumulator, full
accumulators are latched out, and the operands of row r move into row r+1
through the crossed links. Time t=0 is the first compute step, so a run
whose last multiply happens at t takes t+1 steps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, TextIO

from .analysis import BatchMetrics
from .matrix import Matrix, SymbolicSum, symbolic_operands
from .topology import AssignmentTable, assignment_table, exit_rank, transition


class SimulationFault(RuntimeError):
    """The register state contradicts the synchronous schedule."""


@dataclass
class CellState:
    row: int
    col: int
    nw_reg: object = None
    ne_reg: object = None
    nw_tag: int | None = None  # batch index travelling with the operand
    ne_tag: int | None = None
    prod_sum: object = None
    term_count: int = 0
    batch: int | None = None
    a_stream: int | None = None
    b_stream: int | None = None

    def reset(self) -> None:
        self.prod_sum = None
        self.term_count = 0
        self.batch = None
        self.a_stream = None
        self.b_stream = None


@dataclass(frozen=True)
class CompletionEvent:
    batch: int
    row: int
    col: int
    i: int
    j: int
    value: object
    complete_t: int
    exit_rank: int


@dataclass(frozen=True)
class CellSnapshot:
    r: int
    c: int
    terms: int
    acc: object  # None for an idle cell


def render(value) -> str:
    if value is None:
        return "0"
    return str(value)


@dataclass(frozen=True)
class TraceRecord:
    t: int
    active_cells: int
    cells: tuple[CellSnapshot, ...]

    def grid(self, n: int) -> list[list[object]]:
        out = [[None] * n for _ in range(n)]
        for s in self.cells:
            out[s.r - 1][s.c - 1] = s.acc
        return out

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "active": self.active_cells,
            "cells": [{"r": s.r, "c": s.c, "terms": s.terms, "acc": render(s.acc)} for s in self.cells],
        }


def write_trace(records: Iterable[TraceRecord], fp: TextIO) -> None:
    """JSON-lines, one record per step."""
    for rec in records:
        fp.write(json.dumps(rec.to_dict(), ensure_ascii=False, separators=(",", ":")))
        fp.write("\n")


@dataclass
class RunResult:
    products: list[Matrix]
    steps: int
    metrics: BatchMetrics
    completions: list[CompletionEvent]
    trace: list[TraceRecord] | None = None
    absent_feed_slots: tuple[int, int] = (0, 0)  # (a side, b side) inside the feed window

    @property
    def product(self) -> Matrix:
        return self.products[0]

    def discovered_assignment(self, batch: int = 0) -> AssignmentTable:
        n = self.metrics.n
        grid = [[None] * n for _ in range(n)]
        for ev in self.completions:
            if ev.batch == batch:
                grid[ev.row - 1][ev.col - 1] = (ev.i, ev.j)
        return AssignmentTable.from_rows(grid)


def top_feed(batch: tuple[Matrix, Matrix], local_t: int) -> list[tuple[object, object]]:
    """Operands latched into row 1 at step ``local_t`` of a batch.

    Column j streams row j of A on its NW input and column j of B on its NE
    input, one element per step, without padding.
    """
    a, b = batch
    n = a.n
    if not 0 <= local_t <= n - 1:
        raise ValueError(f"local_t must be in 0..{n - 1}, got {local_t}")
    k = local_t + 1
    return [(a[j, k], b[k, j]) for j in range(1, n + 1)]


class MeshState:
    """State of an n x n cross-wired array. Not reentrant."""

    def __init__(self, n: int, exit_side: str = "left",
                 sink: Callable[[TraceRecord], None] | None = None):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.t = 0
        self.exit_side = exit_side
        self.sink = sink
        self.grid = [[CellState(r, c) for c in range(1, n + 1)] for r in range(1, n + 1)]
        self.batch_queue: list[tuple[int, Matrix, Matrix]] = []  # (start_t, A, B)
        self.next_feed = 0  # index into batch_queue of the batch currently feeding
        self.feed_progress = (0, 0)  # (batch, columns of operands fed so far)
        self.completions: list[CompletionEvent] = []
        self.utilization: list[tuple[int, int]] = []
        self._table: AssignmentTable | None = None
        self._last_feed: int | None = None
        self._absent = [0, 0]
        self._routes = [
            (transition("a", r, n), transition("b", r, n)) for r in range(1, n)
        ]

    def cell(self, r: int, c: int) -> CellState:
        return self.grid[r - 1][c - 1]

    def cells(self) -> Iterable[CellState]:
        for row in self.grid:
            yield from row

    def enqueue(self, a: Matrix, b: Matrix) -> int:
        """Queue a pair; it starts feeding as soon as row 1 is free. Returns its batch index."""
        if a.n != self.n or b.n != self.n:
            raise ValueError(f"expected order {self.n}, got {a.n} and {b.n}")
        start = self.t
        if self.batch_queue:
            start = max(start, self.batch_queue[-1][0] + self.n)
        self.batch_queue.append((start, a, b))
        return len(self.batch_queue) - 1

    def busy(self) -> bool:
        if self.next_feed < len(self.batch_queue):
            return True
        return any(c.term_count or c.nw_reg is not None or c.ne_reg is not None for c in self.cells())

    def _assignment(self) -> AssignmentTable:
        if self._table is None:
            self._table = assignment_table(self.n)
        return self._table

    def _load_row1(self) -> None:
        n, t = self.n, self.t
        while self.next_feed < len(self.batch_queue):
            start, a, b = self.batch_queue[self.next_feed]
            if t >= start + n:
                self.next_feed += 1
                continue
            if t < start:
                break
            for c, (av, bv) in enumerate(top_feed((a, b), t - start), 1):
                cell = self.cell(1, c)
                if cell.nw_reg is not None or cell.ne_reg is not None:
                    raise SimulationFault(f"row 1 column {c} still holds operands at t={t}")
                cell.nw_reg, cell.ne_reg = av, bv
                cell.nw_tag = cell.ne_tag = self.next_feed
            self.feed_progress = (self.next_feed, t - start + 1)
            if self._last_feed is not None:
                # steps since the previous feed with nothing on the inputs
                gap = t - self._last_feed - 1
                self._absent[0] += gap * n
                self._absent[1] += gap * n
            self._last_feed = t
            if t - start == n - 1:
                self.next_feed += 1
            return

    def _discover(self, cell: CellState) -> None:
        a, b = cell.nw_reg, cell.ne_reg
        if isinstance(a, SymbolicSum) and isinstance(b, SymbolicSum):
            (ta,), (tb,) = a.terms, b.terms
            i, j = ta[0][0], tb[1][1]
        else:
            i, j = self._assignment()[cell.row, cell.col]
        if cell.term_count == 0:
            cell.a_stream, cell.b_stream = i, j
        elif (cell.a_stream, cell.b_stream) != (i, j):
            raise SimulationFault(
                f"cell ({cell.row},{cell.col}) was computing c{cell.a_stream}{cell.b_stream} "
                f"but received operands for c{i}{j} at t={self.t}"
            )

    def step(self) -> list[CompletionEvent]:
        n, t = self.n, self.t
        self._load_row1()

        active = 0
        for cell in self.cells():
            has_a, has_b = cell.nw_reg is not None, cell.ne_reg is not None
            if has_a != has_b:
                raise SimulationFault(
                    f"cell ({cell.row},{cell.col}) half-fed at t={t}: "
                    f"nw={render(cell.nw_reg) if has_a else None}, ne={render(cell.ne_reg) if has_b else None}"
                )
            if not has_a:
                continue
            if cell.nw_tag != cell.ne_tag:
                raise SimulationFault(f"cell ({cell.row},{cell.col}) mixes batches {cell.nw_tag} and {cell.ne_tag}")
            if cell.term_count and cell.batch != cell.nw_tag:
                raise SimulationFault(f"cell ({cell.row},{cell.col}) reused before its result left")
            self._discover(cell)
            p = cell.nw_reg * cell.ne_reg
            cell.prod_sum = p if cell.prod_sum is None else cell.prod_sum + p
            cell.term_count += 1
            cell.batch = cell.nw_tag
            active += 1
        self.utilization.append((t, active))

        if self.sink is not None:
            self.sink(TraceRecord(t, active, tuple(
                CellSnapshot(c.row, c.col, c.term_count, c.prod_sum) for c in self.cells()
            )))

        events = []
        for cell in self.cells():
            if cell.term_count == n:
                ev = CompletionEvent(
                    batch=cell.batch, row=cell.row, col=cell.col,
                    i=cell.a_stream, j=cell.b_stream, value=cell.prod_sum,
                    complete_t=t, exit_rank=exit_rank(cell.row, cell.col, n, self.exit_side),
                )
                events.append(ev)
                cell.reset()
        self.completions.extend(events)

        # shift operands down one row through the crossed links; row n's leave
        for r in range(n, 1, -1):
            a_route, b_route = self._routes[r - 2]
            src = self.grid[r - 2]
            nw = a_route.route([(c.nw_reg, c.nw_tag) for c in src])
            ne = b_route.route([(c.ne_reg, c.ne_tag) for c in src])
            for cell, (av, at), (bv, bt) in zip(self.grid[r - 1], nw, ne):
                cell.nw_reg, cell.nw_tag = av, at
                cell.ne_reg, cell.ne_tag = bv, bt
        for cell in self.grid[0]:
            cell.nw_reg = cell.ne_reg = None
            cell.nw_tag = cell.ne_tag = None

        self.t += 1
        return events

    def absent_feed_slots(self) -> tuple[int, int]:
        return tuple(self._absent)


def _collect(mesh: MeshState, count: int) -> list[Matrix]:
    n = mesh.n
    found: list[dict] = [{} for _ in range(count)]
    for ev in mesh.completions:
        key = (ev.i, ev.j)
        if key in found[ev.batch]:
            raise SimulationFault(f"c{ev.i}{ev.j} of batch {ev.batch} produced twice")
        found[ev.batch][key] = ev.value
    products = []
    for m, vals in enumerate(found):
        if len(vals) != n * n:
            raise SimulationFault(f"batch {m} produced {len(vals)} of {n * n} components")
        products.append(Matrix(n, [vals[(i, j)] for i in range(1, n + 1) for j in range(1, n + 1)]))
    return products


def run_batch(pairs: Sequence[tuple[Matrix, Matrix]], trace: bool = False,
              sink: Callable[[TraceRecord], None] | None = None,
              exit_side: str = "left") -> RunResult:
    """Multiply each pair, loading batch m at t = m*n right behind batch m-1."""
    if not pairs:
        raise ValueError("run_batch needs at least one pair")
    n = pairs[0][0].n
    for a, b in pairs:
        if a.n != n or b.n != n:
            raise ValueError(f"all matrices must have order {n}")

    records: list[TraceRecord] | None = [] if trace else None
    if trace and sink is not None:
        def emit(rec):
            records.append(rec)
            sink(rec)
    else:
        emit = records.append if trace else sink

    mesh = MeshState(n, exit_side=exit_side, sink=emit)
    for a, b in pairs:
        mesh.enqueue(a, b)
    while mesh.busy():
        mesh.step()

    series = tuple(mesh.utilization)
    metrics = BatchMetrics(
        N=len(pairs), n=n, total_steps=mesh.t,
        active_cell_steps=sum(a for _, a in series), utilization_series=series,
    )
    return RunResult(
        products=_collect(mesh, len(pairs)), steps=mesh.t, metrics=metrics,
        completions=mesh.completions, trace=records, absent_feed_slots=mesh.absent_feed_slots(),
    )


def run_single(a: Matrix, b: Matrix, trace: bool = False, exit_side: str = "left") -> RunResult:
    if a.n != b.n:
        raise ValueError(f"order mismatch: {a.n} vs {b.n}")
    return run_batch([(a, b)], trace=trace, exit_side=exit_side)


def snapshot_symbolic(n: int, t_stop: int) -> list[list[SymbolicSum]]:
    """Accumulator contents right after the multiply-accumulate at ``t_stop``.

    Runs a single symbolic product; idle cells read as the empty sum.
    """
    if not 0 <= t_stop <= 2 * n - 2:
        raise ValueError(f"t_stop must be in 0..{2 * n - 2}, got {t_stop}")
    a, b = symbolic_operands(n)
    res = run_single(a, b, trace=True)
    grid = res.trace[t_stop].grid(n)
    return [[SymbolicSum() if v is None else v for v in row] for row in grid]


def discovered_assignment(n: int) -> AssignmentTable:
    """Cell assignment found by following symbolic operands through the array."""
    a, b = symbolic_operands(n)
    return run_single(a, b).discovered_assignment()
