"""Follow symbolic operands through a 4x4 cross-wired array.

Each cell's accumulator is printed after the multiply-accumulate at
t = 0, 1, 2, 3. Row 1 finishes at t = 3, row 4 at t = 6.
"""

from crossmesh import run_single, snapshot_symbolic, symbolic_operands

n = 4
for t in range(n):
    print(f"t={t}")
    for row in snapshot_symbolic(n, t):
        print("   " + " | ".join(str(s).ljust(30) for s in row))
    print()

# the whole run, with the component each cell ended up computing
res = run_single(*symbolic_operands(n))
print("steps:", res.steps)
for ev in sorted(res.completions, key=lambda e: (e.complete_t, e.col)):
    print(f"t={ev.complete_t} cell ({ev.row},{ev.col}) -> c{ev.i}{ev.j} = {ev.value}")
