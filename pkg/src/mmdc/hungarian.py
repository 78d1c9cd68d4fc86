"""Exact minimum-weight perfect matching on a square integer matrix.

Shortest-augmenting-path Hungarian method with row/column potentials,
O(n^3). The inner column scan is vectorized with numpy ``int64``; the
overflow guard in :class:`WeightMatrix` keeps every intermediate value
representable, so results are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .gadget import GadgetGraph

INT64_MAX = int(np.iinfo(np.int64).max)
# potentials stay within ~2n * max|w|; leave a further factor of 4 headroom
_HEADROOM = 8


class OverflowRisk(ArithmeticError):
    """Weights too large for exact 64-bit arithmetic at this matrix size."""


def check_width(n: int, maxabs: int) -> None:
    if _HEADROOM * max(n, 1) * (maxabs + 1) >= INT64_MAX:
        raise OverflowRisk(f"n={n}, max|w|={maxabs} exceeds the 64-bit budget")


def big_value(n: int, maxabs: int) -> int:
    """Sentinel for missing edges; exceeds any all-finite matching difference."""
    return 2 * n * (maxabs + 1) + 1


@dataclass(frozen=True)
class WeightMatrix:
    w: np.ndarray
    big_threshold: Optional[int] = None

    def __post_init__(self):
        w = np.asarray(self.w)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"weight matrix must be square, got shape {w.shape}")
        if w.dtype != np.int64:
            as_int = [[int(x) for x in row] for row in w.tolist()]
            maxabs = max((abs(x) for row in as_int for x in row), default=0)
            check_width(len(as_int), maxabs)
            w = np.array(as_int, dtype=np.int64).reshape(w.shape)
        else:
            check_width(w.shape[0], int(np.abs(w).max()) if w.size else 0)
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.w.shape[0]


@dataclass(frozen=True)
class Assignment:
    match_of: tuple[int, ...]
    total: int
    u: tuple[int, ...]
    v: tuple[int, ...]


def materialize(g: "GadgetGraph") -> WeightMatrix:
    """Replace missing gadget edges by the big-M sentinel."""
    present = g.present
    maxabs = int(np.abs(g.weights[present]).max()) if present.any() else 0
    big = big_value(g.n, maxabs)
    check_width(g.n, big)
    w = np.where(present, g.weights, np.int64(big)).astype(np.int64)
    return WeightMatrix(w=w, big_threshold=big)


def solve(m: WeightMatrix) -> Assignment:
    """Minimum-weight perfect matching of ``m`` with a dual certificate.

    Rows are inserted one at a time; each insertion runs a Dijkstra-style
    search over reduced costs. Among columns with equal slack the lowest
    index is taken, which makes the output deterministic.
    """
    a = m.w
    n = m.n
    if n == 0:
        return Assignment(match_of=(), total=0, u=(), v=())
    inf = np.int64(INT64_MAX // 2)
    # 1-based: index 0 is the virtual column used as the search root
    u = np.zeros(n + 1, dtype=np.int64)
    v = np.zeros(n + 1, dtype=np.int64)
    u[1:] = a.min(axis=1)
    p = np.zeros(n + 1, dtype=np.int64)  # p[j]: row matched to column j
    way = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, inf, dtype=np.int64)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            cur = a[i0 - 1] - u[i0] - v[1:]
            free = ~used[1:]
            better = free & (cur < minv[1:])
            minv[1:][better] = cur[better]
            way[1:][better] = j0
            masked = np.where(free, minv[1:], inf)
            j1 = int(np.argmin(masked)) + 1
            delta = masked[j1 - 1]
            u[p[used]] += delta
            v[used] -= delta
            minv[1:][free] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    match_of = [0] * n
    for j in range(1, n + 1):
        match_of[p[j] - 1] = j - 1
    total = sum(int(a[r, c]) for r, c in enumerate(match_of))
    return Assignment(
        match_of=tuple(match_of),
        total=total,
        u=tuple(int(x) for x in u[1:]),
        v=tuple(int(x) for x in v[1:]),
    )


def solve_matrix(w) -> Assignment:
    return solve(WeightMatrix(w=np.asarray(w)))


def verify_certificate(m: WeightMatrix, a: Assignment) -> bool:
    """Check bijection, dual feasibility, complementary slackness and totals."""
    n = m.n
    if len(a.match_of) != n or sorted(a.match_of) != list(range(n)):
        return False
    if len(a.u) != n or len(a.v) != n:
        return False
    w = [[int(x) for x in row] for row in m.w.tolist()]
    for r in range(n):
        for c in range(n):
            if a.u[r] + a.v[c] > w[r][c]:
                return False
    for r, c in enumerate(a.match_of):
        if a.u[r] + a.v[c] != w[r][c]:
            return False
    total = sum(w[r][c] for r, c in enumerate(a.match_of))
    return total == a.total == sum(a.u) + sum(a.v)
