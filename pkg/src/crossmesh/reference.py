"""Published tables bundled with the package, and comparison against them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .topology import AssignmentTable, ArrivalOrderMatrix, arrival_order, assignment_table


@lru_cache(maxsize=None)
def _load() -> dict:
    text = resources.files("crossmesh").joinpath("data/published_tables.json").read_text(encoding="utf-8")
    return json.loads(text)


def published_orders() -> list[int]:
    return sorted(int(k) for k in _load()["assignment"])


def published_assignment(n: int) -> AssignmentTable:
    return AssignmentTable.parse("\n".join(_load()["assignment"][str(n)]))


def published_arrival_order(n: int) -> ArrivalOrderMatrix | None:
    rows = _load()["arrival_order"].get(str(n))
    if rows is None:
        return None
    return ArrivalOrderMatrix(n, tuple(tuple(r) for r in rows))


def known_deviations(n: int) -> set[tuple[int, int]]:
    return {(d["row"], d["col"]) for d in _load()["known_deviations"] if d["n"] == n}


@dataclass
class PublishedComparison:
    n: int
    assignment_diffs: list  # (r, c, derived, printed)
    arrival_diffs: list  # (i, j, derived, printed)

    @property
    def unexpected(self) -> list:
        known = known_deviations(self.n)
        return [d for d in self.assignment_diffs if (d[0], d[1]) not in known] + self.arrival_diffs

    def summary(self) -> str:
        if not self.assignment_diffs and not self.arrival_diffs:
            return "match"
        parts = [
            f"({r},{c}): paper={p[0]}{p[1]} derived={d[0]}{d[1]}"
            for r, c, d, p in self.assignment_diffs
        ]
        parts += [f"arrival ({i},{j}): paper={p} derived={d}" for i, j, d, p in self.arrival_diffs]
        return "match except " + "; ".join(parts)


def compare_with_published(n: int) -> PublishedComparison:
    derived = assignment_table(n)
    diffs = derived.diff(published_assignment(n))
    arrival_diffs = []
    printed = published_arrival_order(n)
    if printed is not None:
        mine = arrival_order(n)
        arrival_diffs = [
            (i, j, mine[i, j], printed[i, j])
            for i in range(1, n + 1)
            for j in range(1, n + 1)
            if mine[i, j] != printed[i, j]
        ]
    return PublishedComparison(n, diffs, arrival_diffs)
