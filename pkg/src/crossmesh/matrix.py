"""Exact scalars and square matrices.

Entries are either Python ints or :class:`SymbolicSum` values. Floats are
rejected so that every comparison in the simulators is bit-exact. All
coordinates exposed here are 1-based.
"""

from __future__ import annotations

import random
from collections import Counter
from typing import Iterable, Sequence

# a term is (a_index, b_index); an index is an (row, col) pair or None for atoms
Index = tuple[int, int]
Term = tuple[Index | None, Index | None]


class SymbolicSum:
    """A multiset of product terms ``a_{ik} * b_{k'j}``.

    Atoms are single terms with one side missing: ``a_{ik}`` is the term
    ``((i, k), None)``. Multiplying an a-atom by a b-atom gives the full term
    ``((i, k), (k', j))``. Equality ignores term order.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[Term] = ()):
        self._terms = Counter(terms)

    @classmethod
    def a(cls, i: int, k: int) -> "SymbolicSum":
        return cls([((i, k), None)])

    @classmethod
    def b(cls, k: int, j: int) -> "SymbolicSum":
        return cls([(None, (k, j))])

    @property
    def terms(self) -> Counter:
        return Counter(self._terms)

    def __len__(self) -> int:
        return sum(self._terms.values())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, SymbolicSum):
            return NotImplemented
        return SymbolicSum(self._terms + other._terms)

    __radd__ = __add__

    def __mul__(self, other):
        if not isinstance(other, SymbolicSum):
            return NotImplemented
        out: Counter = Counter()
        for (a1, b1), m1 in self._terms.items():
            for (a2, b2), m2 in other._terms.items():
                if a1 is not None and b1 is None and a2 is None and b2 is not None:
                    out[(a1, b2)] += m1 * m2
                elif a2 is not None and b2 is None and a1 is None and b1 is not None:
                    out[(a2, b1)] += m1 * m2
                else:
                    raise TypeError("only a-atoms times b-atoms are supported")
        res = SymbolicSum()
        res._terms = out
        return res

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, SymbolicSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(_render_term(t) for t in sorted(self._terms.elements(), key=_term_key))

    def __repr__(self) -> str:
        return f"SymbolicSum({str(self)!r})"


def _term_key(term: Term):
    a, b = term
    return (a or (0, 0), b or (0, 0))


def _render_term(term: Term) -> str:
    a, b = term
    parts = []
    if a is not None:
        parts.append(f"a{a[0]}{a[1]}")
    if b is not None:
        parts.append(f"b{b[0]}{b[1]}")
    return "·".join(parts)


def expected_terms(i: int, j: int, m: int) -> SymbolicSum:
    """The sum ``a_{i1}b_{1j} + ... + a_{im}b_{mj}``."""
    return SymbolicSum(((i, k), (k, j)) for k in range(1, m + 1))


def _check_scalar(x):
    if isinstance(x, bool) or not isinstance(x, (int, SymbolicSum)):
        raise TypeError(f"matrix entries must be int or SymbolicSum, got {type(x).__name__}")
    return x


class Matrix:
    """Immutable square matrix of exact scalars, indexed ``m[i, j]`` from 1."""

    __slots__ = ("n", "elements")

    def __init__(self, n: int, elements: Sequence):
        if n < 1:
            raise ValueError("matrix order must be >= 1")
        elements = tuple(_check_scalar(x) for x in elements)
        if len(elements) != n * n:
            raise ValueError(f"expected {n * n} elements, got {len(elements)}")
        self.n = n
        self.elements = elements

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("rows must form a square matrix")
        return cls(n, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, [int(r == c) for r in range(n) for c in range(n)])

    @classmethod
    def random(cls, n: int, rng: random.Random, lo: int = -99, hi: int = 99) -> "Matrix":
        return cls(n, [rng.randint(lo, hi) for _ in range(n * n)])

    def __getitem__(self, idx: tuple[int, int]):
        i, j = idx
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"index ({i}, {j}) out of range for order {self.n}")
        return self.elements[(i - 1) * self.n + (j - 1)]

    def rows(self) -> list[list]:
        n = self.n
        return [list(self.elements[r * n:(r + 1) * n]) for r in range(n)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.n == other.n and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.n, self.elements))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matmul_oracle(self, other)

    def __repr__(self) -> str:
        return f"Matrix({self.rows()!r})"

    def __str__(self) -> str:
        cells = [[str(x) for x in r] for r in self.rows()]
        width = max(len(s) for r in cells for s in r)
        return "\n".join(" ".join(s.rjust(width) for s in r) for r in cells)


def matmul_oracle(a: Matrix, b: Matrix) -> Matrix:
    """Reference product by the plain triple loop."""
    if a.n != b.n:
        raise ValueError(f"order mismatch: {a.n} vs {b.n}")
    n = a.n
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc = 0
            for k in range(1, n + 1):
                acc = acc + a[i, k] * b[k, j]
            out.append(acc)
    return Matrix(n, out)


def symbolic_operands(n: int) -> tuple[Matrix, Matrix]:
    """Matrices of atoms ``a_{ik}`` and ``b_{kj}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a = Matrix(n, [SymbolicSum.a(i, k) for i in range(1, n + 1) for k in range(1, n + 1)])
    b = Matrix(n, [SymbolicSum.b(k, j) for k in range(1, n + 1) for j in range(1, n + 1)])
    return a, b


def diff(a: Matrix, b: Matrix) -> list[tuple[int, int, object, object]]:
    """Entries where two matrices of equal order differ."""
    if a.n != b.n:
        raise ValueError(f"order mismatch: {a.n} vs {b.n}")
    return [
        (i, j, a[i, j], b[i, j])
        for i in range(1, a.n + 1)
        for j in range(1, a.n + 1)
        if a[i, j] != b[i, j]
    ]
