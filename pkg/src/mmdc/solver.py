"""Gadget build, Hungarian solve, and main-edge extraction."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from . import gadget, hungarian
from .gadget import BCopy, ExtraA, GadgetGraph, MainA
from .hungarian import Assignment
from .instance import Infeasible, MatchResult, ProblemInstance, validate, violations


class ReductionError(AssertionError):
    """The extracted matching breaks a bound. Never caught inside the package."""


@dataclass(frozen=True)
class SolveReport:
    result: MatchResult
    gadget_total: int
    main_edge_total: int
    n: int
    timings: dict = field(default_factory=dict)  # phase -> milliseconds


def extract_main_edges(g: GadgetGraph, a: Assignment) -> list[tuple[int, int, int]]:
    """Matched edges joining a copy of ``a_i`` to ``b_j``'s copy in ``Bset_i``.

    Weights are reported in cost units.
    """
    edges = []
    for u, v in enumerate(a.match_of):
        su, tv = g.s_tags[u], g.t_tags[v]
        if isinstance(su, (MainA, ExtraA)) and isinstance(tv, BCopy) and su.i == tv.i:
            w = g.weight(u, v)
            edges.append((su.i, tv.j, w // g.resolution))
    return edges


def solve_mmdc(
    instance: ProblemInstance,
    offsets: tuple[int, int] = gadget.DEFAULT_OFFSETS,
    resolution: Optional[int] = None,
) -> SolveReport:
    """Minimum-cost matching through the gadget reduction.

    Raises :class:`Infeasible` when no matching exists and
    :class:`ReductionError` when the extracted pairs break a bound.
    """
    validate(instance)
    clock = time.perf_counter
    t0 = clock()
    g = gadget.build(instance, offsets=offsets, resolution=resolution)
    m = hungarian.materialize(g)
    t1 = clock()
    if g.y_side == "S":
        # sum(alpha_cap) < sum(beta): B cannot be served. The Y nodes would
        # absorb the shortfall at zero cost, so the matching cannot tell.
        raise Infeasible("total A capacity is below total B demand")
    a = hungarian.solve(m)
    t2 = clock()
    if not hungarian.verify_certificate(m, a):
        raise ReductionError("Hungarian dual certificate failed verification")
    if any(int(m.w[u, v]) >= m.big_threshold for u, v in enumerate(a.match_of)):
        raise Infeasible("every perfect matching of the gadget uses a missing edge")
    edges = extract_main_edges(g, a)
    result = MatchResult.from_pairs(instance, ((i, j) for i, j, _ in edges))
    main_total = sum(w for _, _, w in edges)
    t3 = clock()
    if len(result.pairs) != len(edges):
        raise ReductionError("duplicate main edges extracted")
    problems = violations(instance, result)
    if problems:
        raise ReductionError("; ".join(problems))
    if main_total != result.total_cost:
        raise ReductionError(f"main-edge total {main_total} != pair cost {result.total_cost}")
    return SolveReport(
        result=result,
        gadget_total=a.total,
        main_edge_total=main_total,
        n=g.n,
        timings={"build": 1e3 * (t1 - t0), "solve": 1e3 * (t2 - t1), "extract": 1e3 * (t3 - t2)},
    )
