"""Cell assignment and arrival-order tables, and the mirror law between rows.

The table for the 7x7 array is compared against the published version,
which has one misprinted entry.
"""

from crossmesh import arrival_order, assignment_table, check_symmetries, pattern_perm
from crossmesh.reference import compare_with_published

print("pattern A, n=4:", pattern_perm("A", 4).mapping)
print("pattern B, n=4:", pattern_perm("B", 4).mapping)
print()

for n in (4, 7):
    table = assignment_table(n)
    print(f"assignment, n={n}")
    print(table)
    print(f"arrival order, n={n}")
    print(arrival_order(n, table=table))
    rep = check_symmetries(table)
    print("mirror pairs:", rep.mirror_pairs_ok, "middle row:", rep.middle_row_self_symmetric, "ok:", rep.ok)
    print("against published:", compare_with_published(n).summary())
    print()

# the mirror law holds for odd orders too
bad = [n for n in range(1, 33) if not check_symmetries(assignment_table(n)).ok]
print("orders 1..32 failing a symmetry check:", bad or "none")
