"""Standard skewed mesh against the cross-wired mesh on the same inputs.

The standard mesh needs 3n-2 steps and pads its skewed inputs; the
cross-wired mesh needs 2n-1 and feeds every column on every step.
"""

import random

from crossmesh import Matrix, matmul_oracle, run_single, run_standard

rng = random.Random(1)
print(" n  standard  crosswired  padded slots (standard)  padded slots (crosswired)")
for n in range(1, 11):
    a, b = Matrix.random(n, rng), Matrix.random(n, rng)
    std, cw = run_standard(a, b), run_single(a, b)
    assert std.product == cw.product == matmul_oracle(a, b)
    print(f"{n:2d}  {std.steps:8d}  {cw.steps:10d}  {str(std.absent_feed_slots):>23}  {str(cw.absent_feed_slots):>25}")
