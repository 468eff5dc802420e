import io
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from crossmesh.engine import (
    MeshState,
    SimulationFault,
    discovered_assignment,
    run_batch,
    run_single,
    snapshot_symbolic,
    top_feed,
    write_trace,
)
from crossmesh.matrix import Matrix, SymbolicSum, expected_terms, matmul_oracle, symbolic_operands
from crossmesh.topology import arrival_order, assignment_table
from golden import parse_sum, snapshot


def rand_pairs(n, count, seed):
    rng = random.Random(seed)
    return [(Matrix.random(n, rng), Matrix.random(n, rng)) for _ in range(count)]


def window_active_counts(N, n):
    """Active cells per step by enumerating when each row of each batch computes."""
    steps = N * n + n - 1
    counts = [0] * steps
    for m in range(N):
        for r in range(1, n + 1):
            for t in range(m * n + r - 1, m * n + r + n - 1):
                counts[t] += n
    return counts


@pytest.mark.parametrize("n", [1, 4, 7])
def test_mesh_new(n):
    mesh = MeshState(n)
    cells = list(mesh.cells())
    assert len(cells) == n * n
    assert all(c.term_count == 0 and c.prod_sum is None for c in cells)
    assert mesh.t == 0 and not mesh.busy()


def test_mesh_new_rejects_zero():
    with pytest.raises(ValueError):
        MeshState(0)


def test_top_feed_first_two_steps():
    pair = symbolic_operands(4)
    got = [(str(a), str(b)) for a, b in top_feed(pair, 0)]
    assert got == [("a11", "b11"), ("a21", "b12"), ("a31", "b13"), ("a41", "b14")]
    got = [(str(a), str(b)) for a, b in top_feed(pair, 1)]
    assert got == [("a12", "b21"), ("a22", "b22"), ("a32", "b23"), ("a42", "b24")]


def test_top_feed_one_by_one():
    a, b = symbolic_operands(1)
    assert top_feed((a, b), 0) == [(a[1, 1], b[1, 1])]


@pytest.mark.parametrize("local_t", [-1, 4])
def test_top_feed_range(local_t):
    with pytest.raises(ValueError):
        top_feed(symbolic_operands(4), local_t)


@pytest.mark.parametrize("t", [0, 1, 2, 3])
def test_snapshots_match_published(t):
    assert snapshot_symbolic(4, t) == snapshot(t)


def test_snapshot_spot_values():
    assert snapshot_symbolic(4, 1)[1][0] == parse_sum("a11b12")
    assert snapshot_symbolic(4, 3)[3][3] == parse_sum("a21b11")
    assert snapshot_symbolic(4, 3)[3][0] == parse_sum("a31b14")
    assert snapshot_symbolic(4, 2)[2] == [parse_sum(x) for x in ("a31b12", "a11b14", "a41b11", "a21b13")]


@pytest.mark.parametrize("t", [-1, 7])
def test_snapshot_range(t):
    with pytest.raises(ValueError):
        snapshot_symbolic(4, t)


def test_step_by_step_cell_2_1():
    a, b = symbolic_operands(4)
    mesh = MeshState(4)
    mesh.enqueue(a, b)
    mesh.step()
    assert mesh.cell(2, 1).prod_sum is None
    mesh.step()
    assert mesh.cell(2, 1).prod_sum == parse_sum("a11b12")
    assert mesh.cell(2, 1).term_count == 1


def test_single_cell_completes_in_one_step():
    mesh = MeshState(1)
    mesh.enqueue(Matrix.from_rows([[3]]), Matrix.from_rows([[5]]))
    events = mesh.step()
    assert [(e.i, e.j, e.value, e.complete_t) for e in events] == [(1, 1, 15, 0)]
    assert not mesh.busy()


def test_run_single_two_by_two():
    res = run_single(Matrix.from_rows([[1, 2], [3, 4]]), Matrix.from_rows([[5, 6], [7, 8]]))
    assert res.product == Matrix.from_rows([[19, 22], [43, 50]])
    assert res.steps == 3


def test_run_single_one_by_one():
    res = run_single(Matrix.from_rows([[3]]), Matrix.from_rows([[5]]))
    assert res.product == Matrix.from_rows([[15]]) and res.steps == 1


def test_run_single_four_takes_seven():
    (a, b), = rand_pairs(4, 1, 11)
    res = run_single(a, b)
    assert res.product == matmul_oracle(a, b)
    assert res.steps == 7


@pytest.mark.parametrize("n", range(1, 17))
def test_oracle_equivalence_and_steps(n):
    for a, b in rand_pairs(n, 3, n):
        res = run_single(a, b)
        assert res.product == matmul_oracle(a, b)
        assert res.steps == 2 * n - 1


def test_mismatched_orders_rejected():
    with pytest.raises(ValueError):
        run_single(Matrix.identity(2), Matrix.identity(3))
    with pytest.raises(ValueError):
        run_batch([(Matrix.identity(2), Matrix.identity(2)), (Matrix.identity(3), Matrix.identity(3))])
    with pytest.raises(ValueError):
        run_batch([])


def test_batch_three_of_four():
    pairs = rand_pairs(4, 3, 5)
    res = run_batch(pairs)
    assert res.steps == 15
    assert res.products == [matmul_oracle(a, b) for a, b in pairs]


def test_batch_single_active_count():
    res = run_batch(rand_pairs(4, 1, 6))
    assert res.steps == 7
    assert res.metrics.active_cell_steps == 64


def test_batch_degenerate_pipeline():
    pairs = rand_pairs(1, 2, 7)
    res = run_batch(pairs)
    assert res.steps == 2
    assert res.products == [matmul_oracle(a, b) for a, b in pairs]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 2**32))
def test_batch_oracle_property(n, N, seed):
    pairs = rand_pairs(n, N, seed)
    res = run_batch(pairs)
    assert res.products == [matmul_oracle(a, b) for a, b in pairs]
    assert res.steps == N * n + n - 1


@pytest.mark.parametrize("n,N", [(1, 1), (1, 5), (2, 3), (4, 1), (4, 3), (5, 4), (8, 2)])
def test_utilization_matches_window_enumeration(n, N):
    res = run_batch(rand_pairs(n, N, 0))
    assert [a for _, a in res.metrics.utilization_series] == window_active_counts(N, n)
    assert res.metrics.active_cell_steps == N * n**3


@pytest.mark.parametrize("n,N", [(3, 4), (4, 3), (6, 2)])
def test_active_count_ramp(n, N):
    series = [a for _, a in run_batch(rand_pairs(n, N, 1)).metrics.utilization_series]
    assert series[:n] == [n * (t + 1) for t in range(n)]
    assert series[n - 1:N * n] == [n * n] * (N * n - n + 1)
    assert series[-n:] == [n * (n - t) for t in range(n)]


@pytest.mark.parametrize("n,N", [(1, 3), (3, 2), (4, 3), (7, 2)])
def test_completion_timing_law(n, N):
    res = run_batch(rand_pairs(n, N, 2))
    assert len(res.completions) == N * n * n
    for ev in res.completions:
        assert ev.complete_t == ev.batch * n + ev.row + n - 2


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 7])
def test_exit_ranks_reproduce_arrival_order(n):
    res = run_single(*symbolic_operands(n))
    events = sorted(res.completions, key=lambda e: (e.complete_t, e.col))
    assert [e.exit_rank for e in events] == list(range(1, n * n + 1))
    order = arrival_order(n)
    for rank, e in enumerate(events, 1):
        assert order[e.i, e.j] == rank


@pytest.mark.parametrize("n", range(1, 13))
def test_symbolic_discovery_agrees_with_composition(n):
    assert discovered_assignment(n) == assignment_table(n)


@pytest.mark.parametrize("n", [1, 3, 4, 6])
def test_symbolic_sums_are_exact(n):
    res = run_single(*symbolic_operands(n), trace=True)
    for ev in res.completions:
        assert ev.value == expected_terms(ev.i, ev.j, n)
    for rec in res.trace:
        for cell in rec.cells:
            if cell.acc is not None:
                i, j = res.discovered_assignment()[cell.r, cell.c]
                assert cell.acc == expected_terms(i, j, cell.terms)


def test_cells_are_reused_across_batches():
    a, b = symbolic_operands(3)
    res = run_batch([(a, b), (a, b)], trace=True)
    by_cell = {}
    for ev in res.completions:
        by_cell.setdefault((ev.row, ev.col), []).append(ev.batch)
    assert all(v == [0, 1] for v in by_cell.values())


def test_no_padding_on_inputs():
    assert run_batch(rand_pairs(5, 3, 0)).absent_feed_slots == (0, 0)


def test_half_fed_cell_halts():
    mesh = MeshState(3)
    mesh.cell(2, 2).nw_reg = 7
    with pytest.raises(SimulationFault):
        mesh.step()


def test_mixed_batches_halt():
    mesh = MeshState(2)
    cell = mesh.cell(1, 1)
    cell.nw_reg, cell.ne_reg = 1, 1
    cell.nw_tag, cell.ne_tag = 0, 1
    with pytest.raises(SimulationFault):
        mesh.step()


def test_late_enqueue_starts_when_row_one_free():
    mesh = MeshState(3)
    (a, b), (c, d) = rand_pairs(3, 2, 9)
    mesh.enqueue(a, b)
    mesh.step()
    assert mesh.enqueue(c, d) == 1
    assert mesh.batch_queue[1][0] == 3
    while mesh.busy():
        mesh.step()
    assert mesh.t == 2 * 3 + 3 - 1


def test_trace_sink_and_jsonl():
    seen = []
    (a, b), = rand_pairs(2, 1, 4)
    res = run_batch([(a, b)], trace=True, sink=seen.append)
    assert len(res.trace) == len(seen) == res.steps
    buf = io.StringIO()
    write_trace(res.trace, buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 3
    first = json.loads(lines[0])
    assert set(first) == {"t", "active", "cells"}
    assert first["t"] == 0 and first["active"] == 2
    assert first["cells"][0] == {"r": 1, "c": 1, "terms": 1, "acc": str(a[1, 1] * b[1, 1])}
    assert first["cells"][2]["acc"] == "0"
    for rec in map(json.loads, lines):
        assert 0 <= rec["active"] <= 4


def test_symbolic_trace_rendering():
    res = run_single(*symbolic_operands(4), trace=True)
    buf = io.StringIO()
    write_trace(res.trace, buf)
    rec = json.loads(buf.getvalue().splitlines()[1])
    cell = next(c for c in rec["cells"] if (c["r"], c["c"]) == (1, 1))
    assert cell["acc"] == "a11·b11 + a12·b21" and cell["terms"] == 2


def test_symbolic_sum_type_is_returned_for_idle_cells():
    grid = snapshot_symbolic(4, 0)
    assert isinstance(grid[3][3], SymbolicSum) and grid[3][3] == SymbolicSum()
