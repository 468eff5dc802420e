"""Pipelined batches: measured utilization against the closed-form model.

Batch m enters row 1 at t = m*n, so row 1 never idles once the pipe is
full. The measured efficiency equals N / (N + 1 - 1/n) exactly.
"""

import random

from crossmesh import (
    Matrix,
    average_steps,
    compare_report,
    efficiency_formula,
    efficiency_measured,
    idle_cells,
    run_batch,
)

rng = random.Random(0)
n, N = 4, 3
res = run_batch([(Matrix.random(n, rng), Matrix.random(n, rng)) for _ in range(N)])
print(f"n={n} N={N}: steps={res.steps} active cell-steps={res.metrics.active_cell_steps}")
for t, active in res.metrics.utilization_series:
    print(f"  t={t:2d} {'#' * active}")
print("idle during load / drain:", idle_cells(n))
print("measured:", efficiency_measured(res.metrics), "formula:", efficiency_formula(N, n))
print()

runs = []
for N in (1, 10, 100):
    pairs = [(Matrix.random(n, rng), Matrix.random(n, rng)) for _ in range(N)]
    runs.append(run_batch(pairs).metrics)
print(compare_report(runs, include_baseline=True).to_csv())

for N in (1, 10, 100, 1000):
    avg = average_steps(N, 8)
    print(f"n=8 N={N}: average steps {avg} = {float(avg):.4f}")
