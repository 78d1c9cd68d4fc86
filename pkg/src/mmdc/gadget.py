"""Bipartite gadget whose minimum perfect matching encodes an MMDC optimum.

S side (canonical order)::

    MainA(i, k)   k < alpha[i]                  copies of a_i that must be used
    ExtraA(i, k)  k < alpha_cap[i] - alpha[i]   optional copies of a_i
    XDummy(j, k)  k < beta_cap[j] - beta[j]     slack absorbers for b_j
    WDummy(j, k)  k < s - beta_cap[j]           capacity blockers for b_j
    YNode(k)      only when sum(alpha_cap) < sum(beta)

T side::

    BCopy(j, i)   one copy of every b_j inside Bset_i, ordered i-major
    YNode(k)      only when sum(alpha_cap) > sum(beta)

Edge weights live in *gadget units*: ``resolution`` gadget units equal one
cost unit. Main edges weigh ``resolution * cost[i][j]``; X-to-B edges weigh
``gamma1`` and X-to-Y edges ``gamma2`` where
``gamma1 < gamma2 < gamma = resolution * min(cost)``.

In the Y-in-T case a perfect matching that encodes a matching with P pairs
and cost c weighs ``resolution * c + (gamma2 - gamma1) * P + constant``, so
the dummy preference leaks into the objective as a per-pair charge. With
``resolution`` above ``(gamma2 - gamma1) * s * t`` that charge can only
break ties between equal-cost matchings; :func:`exact_resolution` picks
such a value. ``resolution=1`` gives the integer-unit construction where
the charge is a full cost unit per pair.
"""

from __future__ import annotations

from dataclasses import astuple, dataclass
from typing import Optional, Union

import numpy as np

from .hungarian import OverflowRisk, check_width
from .instance import ProblemInstance, ValidationError, validate

# (k1, k2): gamma1 = gamma - k1, gamma2 = gamma - k2, in gadget units
DEFAULT_OFFSETS = (2, 1)

MISSING = None


@dataclass(frozen=True)
class MainA:
    i: int
    k: int


@dataclass(frozen=True)
class ExtraA:
    i: int
    k: int


@dataclass(frozen=True)
class XDummy:
    j: int
    k: int


@dataclass(frozen=True)
class WDummy:
    j: int
    k: int


@dataclass(frozen=True)
class BCopy:
    j: int
    i: int


@dataclass(frozen=True)
class YNode:
    k: int


NodeTag = Union[MainA, ExtraA, XDummy, WDummy, BCopy, YNode]


class BuildError(ValueError):
    pass


def format_tag(tag: NodeTag) -> str:
    return f"{type(tag).__name__}({','.join(str(x) for x in astuple(tag))})"


@dataclass(frozen=True)
class GadgetGraph:
    n: int
    s_tags: tuple[NodeTag, ...]
    t_tags: tuple[NodeTag, ...]
    weights: np.ndarray  # int64, n x n; meaningful only where ``present``
    present: np.ndarray  # bool, n x n
    gamma: int
    gamma1: int
    gamma2: int
    y_side: Optional[str]  # "S", "T" or None
    resolution: int = 1

    def weight(self, u: int, v: int) -> Optional[int]:
        """Weight of the edge between S-index ``u`` and T-index ``v``, or ``MISSING``."""
        if not self.present[u, v]:
            return MISSING
        return int(self.weights[u, v])

    def finite_edges(self):
        for u, v in zip(*np.nonzero(self.present)):
            yield int(u), int(v), int(self.weights[u, v])


def side_counts(instance: ProblemInstance) -> tuple[int, Optional[str], int]:
    """Return ``(n, y_side, y_size)`` for the balanced gadget."""
    diff = sum(instance.alpha_cap) - sum(instance.beta)
    st = instance.s * instance.t
    if diff < 0:
        return st, "S", -diff
    if diff > 0:
        return st + diff, "T", diff
    return st, None, 0


def exact_resolution(instance: ProblemInstance, offsets: tuple[int, int] = DEFAULT_OFFSETS) -> int:
    """Smallest resolution at which the per-pair charge cannot beat one cost unit."""
    k1, k2 = offsets
    return (k1 - k2) * instance.s * instance.t + 1


def choose_gammas(
    instance: ProblemInstance,
    offsets: tuple[int, int] = DEFAULT_OFFSETS,
    resolution: int = 1,
) -> tuple[int, int, int]:
    """``(gamma, gamma1, gamma2)`` in gadget units.

    >>> choose_gammas(ProblemInstance.create([[5]], [1], [1], [1], [1]))
    (5, 3, 4)
    """
    k1, k2 = offsets
    if not k1 > k2 >= 1:
        raise ValueError(f"offsets must satisfy k1 > k2 >= 1, got {offsets}")
    if resolution < 1:
        raise ValueError(f"resolution must be >= 1, got {resolution}")
    gamma = resolution * instance.min_cost_entry()
    return gamma, gamma - k1, gamma - k2


def edge_weight(
    u: NodeTag,
    v: NodeTag,
    instance: ProblemInstance,
    gammas: tuple[int, int, int],
    y_side: Optional[str],
    resolution: int = 1,
) -> Optional[int]:
    """Weight of the gadget edge (u on S, v on T), or ``MISSING``."""
    _, gamma1, gamma2 = gammas
    if isinstance(v, BCopy):
        if isinstance(u, (MainA, ExtraA)):
            return resolution * instance.cost[u.i][v.j] if u.i == v.i else MISSING
        if isinstance(u, XDummy):
            return gamma1 if u.j == v.j else MISSING
        if isinstance(u, WDummy):
            return 0 if u.j == v.j else MISSING
        if isinstance(u, YNode) and y_side == "S":
            return 0
        return MISSING
    if isinstance(v, YNode) and y_side == "T":
        if isinstance(u, ExtraA):
            return 0
        if isinstance(u, XDummy):
            return gamma2
    return MISSING


def s_side_tags(instance: ProblemInstance) -> list[NodeTag]:
    s, t = instance.s, instance.t
    _, y_side, y_size = side_counts(instance)
    tags: list[NodeTag] = []
    tags += [MainA(i, k) for i in range(s) for k in range(instance.alpha[i])]
    tags += [ExtraA(i, k) for i in range(s) for k in range(instance.alpha_cap[i] - instance.alpha[i])]
    tags += [XDummy(j, k) for j in range(t) for k in range(instance.beta_cap[j] - instance.beta[j])]
    tags += [WDummy(j, k) for j in range(t) for k in range(s - instance.beta_cap[j])]
    if y_side == "S":
        tags += [YNode(k) for k in range(y_size)]
    return tags


def t_side_tags(instance: ProblemInstance) -> list[NodeTag]:
    _, y_side, y_size = side_counts(instance)
    tags: list[NodeTag] = [BCopy(j, i) for i in range(instance.s) for j in range(instance.t)]
    if y_side == "T":
        tags += [YNode(k) for k in range(y_size)]
    return tags


def build(
    instance: ProblemInstance,
    offsets: tuple[int, int] = DEFAULT_OFFSETS,
    resolution: Optional[int] = None,
) -> GadgetGraph:
    """Construct the gadget. ``resolution=None`` selects :func:`exact_resolution`."""
    try:
        validate(instance)
    except ValidationError as exc:
        raise BuildError(str(exc)) from exc
    if resolution is None:
        resolution = exact_resolution(instance, offsets)
    gammas = choose_gammas(instance, offsets, resolution)
    n, y_side, _ = side_counts(instance)
    s_tags = s_side_tags(instance)
    t_tags = t_side_tags(instance)
    if len(s_tags) != n or len(t_tags) != n:
        raise BuildError(f"unbalanced gadget: |S|={len(s_tags)}, |T|={len(t_tags)}, expected {n}")

    maxabs = max(abs(gammas[0]), abs(gammas[1]), abs(gammas[2]),
                 resolution * max(abs(c) for row in instance.cost for c in row))
    try:
        check_width(n, maxabs)
    except OverflowRisk as exc:
        raise BuildError(str(exc)) from exc

    s, t = instance.s, instance.t
    weights = np.zeros((n, n), dtype=np.int64)
    present = np.zeros((n, n), dtype=bool)
    # T position of BCopy(j, i) is i * t + j; Y nodes on T follow at s * t
    bset_cols = lambda i: np.arange(i * t, (i + 1) * t)  # noqa: E731
    bj_cols = lambda j: np.arange(j, s * t, t)  # noqa: E731
    y_cols = np.arange(s * t, n)
    scaled = np.array(instance.cost, dtype=np.int64) * resolution
    for u, tag in enumerate(s_tags):
        if isinstance(tag, (MainA, ExtraA)):
            cols = bset_cols(tag.i)
            weights[u, cols] = scaled[tag.i]
            present[u, cols] = True
            if isinstance(tag, ExtraA) and y_side == "T":
                weights[u, y_cols] = 0
                present[u, y_cols] = True
        elif isinstance(tag, XDummy):
            cols = bj_cols(tag.j)
            weights[u, cols] = gammas[1]
            present[u, cols] = True
            if y_side == "T":
                weights[u, y_cols] = gammas[2]
                present[u, y_cols] = True
        elif isinstance(tag, WDummy):
            cols = bj_cols(tag.j)
            weights[u, cols] = 0
            present[u, cols] = True
        else:  # YNode on S
            weights[u, : s * t] = 0
            present[u, : s * t] = True
    return GadgetGraph(
        n=n,
        s_tags=tuple(s_tags),
        t_tags=tuple(t_tags),
        weights=weights,
        present=present,
        gamma=gammas[0],
        gamma1=gammas[1],
        gamma2=gammas[2],
        y_side=y_side,
        resolution=resolution,
    )


def dump(g: GadgetGraph) -> str:
    """Deterministic text listing: nodes, then finite edges."""
    lines = [f"# n={g.n} y_side={g.y_side or 'none'} gamma={g.gamma} gamma1={g.gamma1} "
             f"gamma2={g.gamma2} resolution={g.resolution}"]
    lines += [f"S {u} {format_tag(tag)}" for u, tag in enumerate(g.s_tags)]
    lines += [f"T {v} {format_tag(tag)}" for v, tag in enumerate(g.t_tags)]
    lines += [f"{u} {v} {w}" for u, v, w in g.finite_edges()]
    return "\n".join(lines) + "\n"
