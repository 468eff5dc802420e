"""Standard 2-D systolic mesh with skewed inputs, used as the comparison point.

Row i of A enters cell (i,1) from the west delayed by i-1 steps and moves
east; column j of B enters cell (1,j) from the north delayed by j-1 steps and
moves south. So a_{ik} and b_{kj} meet in cell (i,j) at t = (i-1)+(j-1)+(k-1)
and the last product finishes at t = 3n-3.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .analysis import BatchMetrics
from .engine import (
    CellSnapshot,
    CompletionEvent,
    RunResult,
    SimulationFault,
    TraceRecord,
)
from .matrix import Matrix
from .topology import exit_rank


@dataclass
class StandardCell:
    row: int
    col: int
    a_reg: object = None
    b_reg: object = None
    acc: object = None
    term_count: int = 0
    finished: bool = False  # result held in place after the n-th term


class StandardMeshState:
    def __init__(self, a: Matrix, b: Matrix,
                 sink: Callable[[TraceRecord], None] | None = None):
        if a.n != b.n:
            raise ValueError(f"order mismatch: {a.n} vs {b.n}")
        self.n = n = a.n
        self.a, self.b = a, b
        self.t = 0
        self.sink = sink
        self.grid = [[StandardCell(r, c) for c in range(1, n + 1)] for r in range(1, n + 1)]
        self.completions: list[CompletionEvent] = []
        self.utilization: list[tuple[int, int]] = []
        self.done = 0
        # per edge: first and last injection time, and number of values injected
        self._edges = {"west": [None, None, 0], "north": [None, None, 0]}

    def cell(self, r: int, c: int) -> StandardCell:
        return self.grid[r - 1][c - 1]

    def busy(self) -> bool:
        return self.done < self.n * self.n

    def _inject(self) -> None:
        n, t = self.n, self.t
        for i in range(1, n + 1):
            k = t - (i - 1) + 1
            if 1 <= k <= n:
                self.cell(i, 1).a_reg = self.a[i, k]
                self._mark("west")
        for j in range(1, n + 1):
            k = t - (j - 1) + 1
            if 1 <= k <= n:
                self.cell(1, j).b_reg = self.b[k, j]
                self._mark("north")

    def _mark(self, edge: str) -> None:
        e = self._edges[edge]
        if e[0] is None:
            e[0] = self.t
        e[1] = self.t
        e[2] += 1

    def step(self) -> list[CompletionEvent]:
        n, t = self.n, self.t
        self._inject()

        active = 0
        for row in self.grid:
            for cell in row:
                has_a, has_b = cell.a_reg is not None, cell.b_reg is not None
                if has_a != has_b:
                    raise SimulationFault(f"cell ({cell.row},{cell.col}) half-fed at t={t}")
                if has_a:
                    p = cell.a_reg * cell.b_reg
                    cell.acc = p if cell.acc is None else cell.acc + p
                    cell.term_count += 1
                    active += 1
        self.utilization.append((t, active))

        if self.sink is not None:
            self.sink(TraceRecord(t, active, tuple(
                CellSnapshot(c.row, c.col, c.term_count, c.acc) for row in self.grid for c in row
            )))

        events = []
        for row in self.grid:
            for cell in row:
                if cell.term_count == n and not cell.finished:
                    events.append(CompletionEvent(
                        batch=0, row=cell.row, col=cell.col, i=cell.row, j=cell.col,
                        value=cell.acc, complete_t=t, exit_rank=exit_rank(cell.row, cell.col, n),
                    ))
                    cell.finished = True
        self.done += len(events)
        self.completions.extend(events)

        # a moves east, b moves south
        for r in range(n, 0, -1):
            for c in range(n, 0, -1):
                cell = self.cell(r, c)
                cell.a_reg = self.cell(r, c - 1).a_reg if c > 1 else None
                cell.b_reg = self.cell(r - 1, c).b_reg if r > 1 else None

        self.t += 1
        return events

    def absent_feed_slots(self) -> tuple[int, int]:
        """Empty input slots on the west and north edges inside each edge's feed window."""
        out = []
        for edge in ("west", "north"):
            first, last, count = self._edges[edge]
            out.append(0 if first is None else (last - first + 1) * self.n - count)
        return tuple(out)


def run_standard(a: Matrix, b: Matrix, trace: bool = False) -> RunResult:
    records: list[TraceRecord] | None = [] if trace else None
    mesh = StandardMeshState(a, b, sink=records.append if trace else None)
    while mesh.busy():
        mesh.step()
        if mesh.t > 3 * mesh.n:
            raise SimulationFault("standard mesh failed to finish")
    n = mesh.n
    vals = {(ev.i, ev.j): ev.value for ev in mesh.completions}
    product = Matrix(n, [vals[(i, j)] for i in range(1, n + 1) for j in range(1, n + 1)])
    series = tuple(mesh.utilization)
    metrics = BatchMetrics(
        N=1, n=n, total_steps=mesh.t,
        active_cell_steps=sum(x for _, x in series), utilization_series=series,
    )
    return RunResult(
        products=[product], steps=mesh.t, metrics=metrics, completions=mesh.completions,
        trace=records, absent_feed_slots=mesh.absent_feed_slots(),
    )
