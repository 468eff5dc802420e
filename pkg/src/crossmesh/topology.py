"""Cross-wiring between rows and the tables it induces.

Between row r and row r+1 each stream passes through one of two column
involutions. Pattern A keeps column 1 fixed and swaps (2,3), (4,5), ...;
pattern B swaps (1,2), (3,4), .... The a-streams use A after odd rows and B
after even rows, the b-streams the other way round. Composing these from the
diagonal top row gives the cell -> component assignment.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Literal, Sequence

Pair = tuple[int, int]


@dataclass(frozen=True)
class WiringPattern:
    kind: Literal["A", "B"]
    n: int
    mapping: tuple[int, ...]  # mapping[c - 1] is the destination column of column c

    def __call__(self, c: int) -> int:
        return self.mapping[c - 1]

    def route(self, values: Sequence) -> list:
        """Move ``values[c-1]`` to position ``mapping[c-1]``."""
        out = [None] * self.n
        for src, dst in enumerate(self.mapping):
            out[dst - 1] = values[src]
        return out

    def is_involution(self) -> bool:
        return all(self(self(c)) == c for c in range(1, self.n + 1))


def pattern_perm(kind: str, n: int) -> WiringPattern:
    if kind not in ("A", "B"):
        raise ValueError(f"unknown pattern {kind!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    mapping = list(range(1, n + 1))
    c = 2 if kind == "A" else 1
    while c + 1 <= n:
        mapping[c - 1], mapping[c] = c + 1, c
        c += 2
    return WiringPattern(kind, n, tuple(mapping))


def transition(stream: str, r: int, n: int) -> WiringPattern:
    """Wiring used by ``stream`` ('a' or 'b') going from row r to row r+1."""
    if stream not in ("a", "b"):
        raise ValueError(f"unknown stream {stream!r}")
    if not 1 <= r <= n - 1:
        raise ValueError(f"row {r} has no successor in an order-{n} array")
    odd = r % 2 == 1
    if stream == "a":
        return pattern_perm("A" if odd else "B", n)
    return pattern_perm("B" if odd else "A", n)


def _mirror(row: Sequence[Pair]) -> list[Pair]:
    return [(j, i) for i, j in reversed(row)]


def _fmt(p: Pair | None) -> str:
    return "--" if p is None else f"{p[0]}{p[1]}"


@dataclass(frozen=True)
class AssignmentTable:
    """Entry (r, c) is the component (i, j) computed by cell (r, c)."""

    n: int
    grid: tuple[tuple[Pair, ...], ...]

    def __post_init__(self):
        if len(self.grid) != self.n or any(len(row) != self.n for row in self.grid):
            raise ValueError(f"grid must be {self.n}x{self.n}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Pair]]) -> "AssignmentTable":
        return cls(len(rows), tuple(tuple(tuple(p) for p in row) for row in rows))

    @classmethod
    def parse(cls, text: str) -> "AssignmentTable":
        """Read the compact ``11 22 33`` notation (single-digit indices only)."""
        rows = [
            [(int(tok[0]), int(tok[1])) for tok in line.split()]
            for line in text.strip().splitlines()
            if line.strip()
        ]
        return cls.from_rows(rows)

    def __getitem__(self, rc: tuple[int, int]) -> Pair:
        r, c = rc
        return self.grid[r - 1][c - 1]

    def row(self, r: int) -> tuple[Pair, ...]:
        return self.grid[r - 1]

    def locate(self, i: int, j: int) -> tuple[int, int]:
        """Cell computing c_{ij}; first match in row-major order."""
        for r, row in enumerate(self.grid, 1):
            for c, p in enumerate(row, 1):
                if p == (i, j):
                    return r, c
        raise KeyError((i, j))

    def diff(self, other: "AssignmentTable") -> list[tuple[int, int, Pair, Pair]]:
        """(r, c, mine, theirs) for every differing entry."""
        if self.n != other.n:
            raise ValueError("tables of different order")
        return [
            (r, c, self[r, c], other[r, c])
            for r in range(1, self.n + 1)
            for c in range(1, self.n + 1)
            if self[r, c] != other[r, c]
        ]

    def to_csv(self) -> str:
        return "".join(",".join(f"{i} {j}" for i, j in row) + "\n" for row in self.grid)

    def to_json(self) -> str:
        return json.dumps([[list(p) for p in row] for row in self.grid])

    def __str__(self) -> str:
        return "\n".join(" ".join(_fmt(p) for p in row) for row in self.grid)


@dataclass(frozen=True)
class ArrivalOrderMatrix:
    """Entry (i, j) is the exit rank of c_{ij}, 1..n^2."""

    n: int
    grid: tuple[tuple[int, ...], ...]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.grid[i - 1][j - 1]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.grid]

    def to_csv(self) -> str:
        return "".join(",".join(str(x) for x in row) + "\n" for row in self.grid)

    def to_json(self) -> str:
        return json.dumps(self.rows())

    def __str__(self) -> str:
        w = len(str(self.n * self.n))
        return "\n".join(" ".join(str(x).rjust(w) for x in row) for row in self.grid)


def assignment_table(n: int) -> AssignmentTable:
    if n < 1:
        raise ValueError("n must be >= 1")
    a_streams = list(range(1, n + 1))
    b_streams = list(range(1, n + 1))
    rows = [list(zip(a_streams, b_streams))]
    for r in range(1, n):
        a_streams = transition("a", r, n).route(a_streams)
        b_streams = transition("b", r, n).route(b_streams)
        rows.append(list(zip(a_streams, b_streams)))
    return AssignmentTable.from_rows(rows)


def exit_rank(r: int, c: int, n: int, exit_side: str = "left") -> int:
    """Rank at which the result of cell (r, c) leaves the array.

    Rows finish one step apart, top first; within a row results shift out
    through the horizontal links toward ``exit_side``.
    """
    if exit_side == "left":
        return (r - 1) * n + c
    if exit_side == "right":
        return (r - 1) * n + (n + 1 - c)
    raise ValueError(f"exit_side must be 'left' or 'right', got {exit_side!r}")


def arrival_order(n: int, exit_side: str = "left", table: AssignmentTable | None = None) -> ArrivalOrderMatrix:
    table = table or assignment_table(n)
    ranks = [[0] * n for _ in range(n)]
    for r in range(1, n + 1):
        for c in range(1, n + 1):
            i, j = table[r, c]
            ranks[i - 1][j - 1] = exit_rank(r, c, n, exit_side)
    return ArrivalOrderMatrix(n, tuple(tuple(row) for row in ranks))


@dataclass(frozen=True)
class Discrepancy:
    row: int
    col: int
    expected: Pair | None
    found: Pair
    rule: str  # "diagonal", "mirror", "row-permutation" or "bijective"


@dataclass
class SymmetryReport:
    n: int
    mirror_pairs_ok: dict[tuple[int, int], bool] = field(default_factory=dict)
    middle_row_self_symmetric: bool | None = None  # None when n is odd
    diagonal_ok: bool = True
    row_permutation_ok: bool = True
    bijective_ok: bool = True
    discrepancies: list[Discrepancy] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            not self.discrepancies
            and all(self.mirror_pairs_ok.values())
            and self.middle_row_self_symmetric is not False
            and self.diagonal_ok
            and self.row_permutation_ok
            and self.bijective_ok
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "ok": self.ok,
            "mirror_pairs_ok": [[r, s, ok] for (r, s), ok in sorted(self.mirror_pairs_ok.items())],
            "middle_row_self_symmetric": self.middle_row_self_symmetric,
            "diagonal_ok": self.diagonal_ok,
            "row_permutation_ok": self.row_permutation_ok,
            "bijective_ok": self.bijective_ok,
            "discrepancies": [
                {
                    "row": d.row,
                    "col": d.col,
                    "expected": list(d.expected) if d.expected else None,
                    "found": list(d.found),
                    "rule": d.rule,
                }
                for d in self.discrepancies
            ],
        }


def check_symmetries(t: AssignmentTable) -> SymmetryReport:
    """Check the structural laws of an assignment table.

    Row r must equal row n+2-r reversed with every (i, j) transposed, for
    2 <= r <= n. Each pair is checked once and mismatches are reported at
    the upper row of the pair. For even n the row n/2+1 pairs with itself.
    Also checked: row 1 is the diagonal, every row's i's and j's are
    permutations of 1..n, and the whole table is a bijection onto {1..n}^2.
    """
    n = t.n
    rep = SymmetryReport(n)
    full = set(range(1, n + 1))

    for c in range(1, n + 1):
        if t[1, c] != (c, c):
            rep.diagonal_ok = False
            rep.discrepancies.append(Discrepancy(1, c, (c, c), t[1, c], "diagonal"))

    for r in range(2, n // 2 + 2):
        partner = n + 2 - r
        if partner < r:
            break
        mirrored = _mirror(t.row(partner))
        ok = True
        for c in range(1, n + 1):
            if t[r, c] != mirrored[c - 1]:
                ok = False
                rep.discrepancies.append(Discrepancy(r, c, mirrored[c - 1], t[r, c], "mirror"))
        if partner == r:
            rep.middle_row_self_symmetric = ok
        else:
            rep.mirror_pairs_ok[(r, partner)] = ok

    for r in range(1, n + 1):
        row = t.row(r)
        for axis in (0, 1):
            counts = Counter(p[axis] for p in row)
            if set(counts) != full:
                rep.row_permutation_ok = False
                for c, p in enumerate(row, 1):
                    if counts[p[axis]] > 1 or not 1 <= p[axis] <= n:
                        rep.discrepancies.append(Discrepancy(r, c, None, p, "row-permutation"))

    counts = Counter(p for row in t.grid for p in row)
    if set(counts) != {(i, j) for i in full for j in full}:
        rep.bijective_ok = False
        for r in range(1, n + 1):
            for c in range(1, n + 1):
                p = t[r, c]
                if counts[p] > 1 or not (p[0] in full and p[1] in full):
                    rep.discrepancies.append(Discrepancy(r, c, None, p, "bijective"))

    return rep
