"""Exhaustive reference solver for tiny instances.

Enumerates 0/1 pair matrices row by row; each row ranges over the column
subsets whose size respects that row's bounds, and partial column counts
prune rows that would overshoot a column capacity. Nothing here depends on
the gadget or the flow network.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .instance import Infeasible, MatchResult, ProblemInstance, validate


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationBudget:
    max_cells: int = 20

    def __post_init__(self):
        if not 1 <= self.max_cells <= 24:
            raise ValueError(f"max_cells must be in [1, 24], got {self.max_cells}")


def _row_options(instance: ProblemInstance, i: int) -> list[tuple[int, ...]]:
    cols = range(instance.t)
    return [c for size in range(instance.alpha[i], instance.alpha_cap[i] + 1) for c in combinations(cols, size)]


def _qualifying(instance: ProblemInstance, budget: EnumerationBudget) -> Iterator[tuple[tuple[int, int], ...]]:
    validate(instance)
    if instance.s * instance.t > budget.max_cells:
        raise BudgetExceeded(f"s*t = {instance.s * instance.t} exceeds budget {budget.max_cells}")
    options = [_row_options(instance, i) for i in range(instance.s)]
    counts = [0] * instance.t
    chosen: list[tuple[int, ...]] = []

    def rec(i: int):
        if i == instance.s:
            if all(counts[j] >= instance.beta[j] for j in range(instance.t)):
                yield tuple((r, j) for r, row in enumerate(chosen) for j in row)
            return
        for row in options[i]:
            if any(counts[j] >= instance.beta_cap[j] for j in row):
                continue
            for j in row:
                counts[j] += 1
            chosen.append(row)
            yield from rec(i + 1)
            chosen.pop()
            for j in row:
                counts[j] -= 1

    yield from rec(0)


def brute_force(instance: ProblemInstance, budget: EnumerationBudget = EnumerationBudget()) -> MatchResult:
    """Optimal matching by enumeration; ties go to the lexicographically smallest pair list."""
    best = None
    for pairs in _qualifying(instance, budget):
        key = (instance.pair_cost(pairs), pairs)
        if best is None or key < best:
            best = key
    if best is None:
        raise Infeasible("no 0/1 matrix satisfies the row and column bounds")
    return MatchResult(pairs=best[1], total_cost=best[0])


def count_feasible(instance: ProblemInstance, budget: EnumerationBudget = EnumerationBudget()) -> int:
    return sum(1 for _ in _qualifying(instance, budget))
