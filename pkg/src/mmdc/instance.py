"""Problem data for minimum-cost many-to-many matching with demands and capacities.

Costs are exact Python integers. Geometric inputs are quantized once, at
ingestion, by :func:`from_points`; every solver downstream works on those
integers and never rounds again.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

COST_LIMIT = 10**12

METRICS = ("euclidean", "manhattan", "chebyshev")


class ValidationError(ValueError):
    """An instance violates a structural invariant.

    ``kind`` is one of ``BadDimensions``, ``NegativeDemand``,
    ``DemandExceedsCapacity``, ``CapacityExceedsPartnerCount`` or
    ``CostOutOfRange``. ``side`` is ``"A"`` or ``"B"`` where it applies and
    ``index`` names the offending point (or ``(i, j)`` cell for costs).
    """

    def __init__(self, kind: str, side: Optional[str] = None, index: Any = None, detail: str = ""):
        self.kind = kind
        self.side = side
        self.index = index
        where = ""
        if side is not None:
            where = f"({side}, {index})"
        elif index is not None:
            where = f"{index}"
        super().__init__(f"{kind}{where}" + (f": {detail}" if detail else ""))


class Infeasible(Exception):
    """No matching satisfies every demand and capacity."""


class InfeasibleReason(enum.Enum):
    A_DEMAND_EXCEEDS_B_CAPACITY = "ADemandExceedsBCapacity"
    B_DEMAND_EXCEEDS_A_CAPACITY = "BDemandExceedsACapacity"


@dataclass(frozen=True)
class ProblemInstance:
    s: int
    t: int
    cost: tuple[tuple[int, ...], ...]
    alpha: tuple[int, ...]
    alpha_cap: tuple[int, ...]
    beta: tuple[int, ...]
    beta_cap: tuple[int, ...]

    @classmethod
    def create(
        cls,
        cost: Sequence[Sequence[int]],
        alpha: Iterable[int],
        alpha_cap: Iterable[int],
        beta: Iterable[int],
        beta_cap: Iterable[int],
    ) -> "ProblemInstance":
        """Build an instance from any nested sequences, inferring ``s`` and ``t``."""
        rows = tuple(tuple(int(c) for c in row) for row in cost)
        s = len(rows)
        t = len(rows[0]) if rows else 0
        return cls(
            s=s,
            t=t,
            cost=rows,
            alpha=tuple(int(x) for x in alpha),
            alpha_cap=tuple(int(x) for x in alpha_cap),
            beta=tuple(int(x) for x in beta),
            beta_cap=tuple(int(x) for x in beta_cap),
        )

    @property
    def n_points(self) -> int:
        return self.s + self.t

    def pair_cost(self, pairs: Iterable[tuple[int, int]]) -> int:
        return sum(self.cost[i][j] for i, j in pairs)

    def min_cost_entry(self) -> int:
        return min(min(row) for row in self.cost)

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "t": self.t,
            "alpha": list(self.alpha),
            "alpha_cap": list(self.alpha_cap),
            "beta": list(self.beta),
            "beta_cap": list(self.beta_cap),
            "cost": [list(row) for row in self.cost],
        }


@dataclass(frozen=True)
class MatchResult:
    pairs: tuple[tuple[int, int], ...]
    total_cost: int

    @classmethod
    def from_pairs(cls, instance: ProblemInstance, pairs: Iterable[tuple[int, int]]) -> "MatchResult":
        ordered = tuple(sorted((int(i), int(j)) for i, j in pairs))
        return cls(pairs=ordered, total_cost=instance.pair_cost(ordered))


def validate(instance: ProblemInstance, cost_limit: int = COST_LIMIT) -> None:
    """Raise :class:`ValidationError` for the first violated invariant."""
    s, t = instance.s, instance.t
    if s < 1 or t < 1:
        raise ValidationError("BadDimensions", detail=f"s={s}, t={t}; both must be >= 1")
    if len(instance.cost) != s or any(len(row) != t for row in instance.cost):
        raise ValidationError("BadDimensions", detail=f"cost matrix is not {s}x{t}")
    for side, dem, cap, size, partners in (
        ("A", instance.alpha, instance.alpha_cap, s, t),
        ("B", instance.beta, instance.beta_cap, t, s),
    ):
        if len(dem) != size or len(cap) != size:
            raise ValidationError("BadDimensions", detail=f"side {side} bounds must have length {size}")
        for k in range(size):
            if dem[k] < 0:
                raise ValidationError("NegativeDemand", side, k)
            if dem[k] > cap[k]:
                raise ValidationError("DemandExceedsCapacity", side, k, f"{dem[k]} > {cap[k]}")
            if cap[k] > partners:
                raise ValidationError(
                    "CapacityExceedsPartnerCount", side, k, f"{cap[k]} > {partners}"
                )
    for i, row in enumerate(instance.cost):
        for j, c in enumerate(row):
            if abs(c) > cost_limit:
                raise ValidationError("CostOutOfRange", index=(i, j), detail=f"|{c}| > {cost_limit}")


def necessary_feasibility(instance: ProblemInstance) -> Optional[InfeasibleReason]:
    """Cheap counting test. ``None`` does not prove feasibility; see ``flow.feasible``."""
    if sum(instance.alpha) > sum(instance.beta_cap):
        return InfeasibleReason.A_DEMAND_EXCEEDS_B_CAPACITY
    if sum(instance.beta) > sum(instance.alpha_cap):
        return InfeasibleReason.B_DEMAND_EXCEEDS_A_CAPACITY
    return None


def transpose(instance: ProblemInstance) -> ProblemInstance:
    """Swap the roles of A and B."""
    return ProblemInstance(
        s=instance.t,
        t=instance.s,
        cost=tuple(zip(*instance.cost)) if instance.cost else (),
        alpha=instance.beta,
        alpha_cap=instance.beta_cap,
        beta=instance.alpha,
        beta_cap=instance.alpha_cap,
    )


def scale_costs(instance: ProblemInstance, factor: int) -> ProblemInstance:
    return ProblemInstance(
        s=instance.s,
        t=instance.t,
        cost=tuple(tuple(c * factor for c in row) for row in instance.cost),
        alpha=instance.alpha,
        alpha_cap=instance.alpha_cap,
        beta=instance.beta,
        beta_cap=instance.beta_cap,
    )


def with_cost(instance: ProblemInstance, i: int, j: int, value: int) -> ProblemInstance:
    rows = [list(row) for row in instance.cost]
    rows[i][j] = value
    return ProblemInstance(
        s=instance.s,
        t=instance.t,
        cost=tuple(tuple(row) for row in rows),
        alpha=instance.alpha,
        alpha_cap=instance.alpha_cap,
        beta=instance.beta,
        beta_cap=instance.beta_cap,
    )


def violations(instance: ProblemInstance, result: MatchResult) -> list[str]:
    """List every way ``result`` breaks the matching contract (empty if none)."""
    problems = []
    if len(set(result.pairs)) != len(result.pairs):
        problems.append("duplicate pairs")
    deg_a = [0] * instance.s
    deg_b = [0] * instance.t
    for i, j in result.pairs:
        if not (0 <= i < instance.s and 0 <= j < instance.t):
            problems.append(f"pair ({i}, {j}) out of range")
            continue
        deg_a[i] += 1
        deg_b[j] += 1
    for i, d in enumerate(deg_a):
        if not instance.alpha[i] <= d <= instance.alpha_cap[i]:
            problems.append(f"a_{i} has {d} partners, outside [{instance.alpha[i]}, {instance.alpha_cap[i]}]")
    for j, d in enumerate(deg_b):
        if not instance.beta[j] <= d <= instance.beta_cap[j]:
            problems.append(f"b_{j} has {d} partners, outside [{instance.beta[j]}, {instance.beta_cap[j]}]")
    if not problems and instance.pair_cost(result.pairs) != result.total_cost:
        problems.append(f"total_cost {result.total_cost} != sum of pair costs {instance.pair_cost(result.pairs)}")
    return problems


# -- geometric ingestion -----------------------------------------------------


def _distance(a: Sequence[float], b: Sequence[float], metric: str) -> Decimal:
    diffs = [abs(Decimal(x) - Decimal(y)) for x, y in zip(a, b)]
    if metric == "manhattan":
        return sum(diffs, Decimal(0))
    if metric == "chebyshev":
        return max(diffs, default=Decimal(0))
    if metric == "euclidean":
        return sum((d * d for d in diffs), Decimal(0)).sqrt()
    raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")


def from_points(
    points_a: Sequence[Sequence[float]],
    points_b: Sequence[Sequence[float]],
    alpha: Iterable[int],
    alpha_cap: Iterable[int],
    beta: Iterable[int],
    beta_cap: Iterable[int],
    metric: str = "euclidean",
    scale: int = 1,
    cost_limit: int = COST_LIMIT,
) -> ProblemInstance:
    """Instance whose costs are ``round(scale * distance)``, half away from zero.

    Distances are evaluated in 60-digit decimal arithmetic from the exact
    binary value of each coordinate, so the rounding is correct for any
    finite float input. All optimization afterwards is exact with respect
    to these scaled integers.
    """
    if int(scale) != scale or scale < 1:
        raise ValueError(f"scale must be a positive integer, got {scale!r}")
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
    dims = {len(p) for p in list(points_a) + list(points_b)}
    if len(dims) > 1:
        raise ValueError(f"points have mixed dimensions {sorted(dims)}")
    for p in list(points_a) + list(points_b):
        for x in p:
            if not Decimal(x).is_finite():
                raise ValueError(f"non-finite coordinate {x!r}")
    cost = []
    with localcontext() as ctx:
        ctx.prec = 60
        for i, a in enumerate(points_a):
            row = []
            for j, b in enumerate(points_b):
                value = int((_distance(a, b, metric) * scale).quantize(Decimal(1), rounding=ROUND_HALF_UP))
                if abs(value) > cost_limit:
                    raise ValidationError("CostOutOfRange", index=(i, j), detail=f"{value} > {cost_limit}")
                row.append(value)
            cost.append(row)
    return ProblemInstance.create(cost, alpha, alpha_cap, beta, beta_cap)


# -- JSON --------------------------------------------------------------------

_BOUND_KEYS = {"s", "t", "alpha", "alpha_cap", "beta", "beta_cap"}
_COST_KEYS = _BOUND_KEYS | {"cost"}
_POINT_KEYS = _BOUND_KEYS | {"points_a", "points_b", "metric", "scale"}


def instance_from_json(data: dict) -> ProblemInstance:
    """Parse the canonical instance document (cost form or point form)."""
    if not isinstance(data, dict):
        raise ValueError("instance document must be a JSON object")
    keys = set(data)
    allowed = _POINT_KEYS if "cost" not in keys else _COST_KEYS
    unknown = keys - allowed
    if unknown:
        raise ValueError(f"unknown keys: {sorted(unknown)}")
    missing = allowed - keys
    if missing:
        raise ValueError(f"missing keys: {sorted(missing)}")
    s, t = data["s"], data["t"]
    for key, size in (("alpha", s), ("alpha_cap", s), ("beta", t), ("beta_cap", t)):
        if len(data[key]) != size:
            raise ValueError(f"{key} has length {len(data[key])}, expected {size}")
    for key in ("s", "t", "alpha", "alpha_cap", "beta", "beta_cap"):
        values = data[key] if isinstance(data[key], list) else [data[key]]
        if any(isinstance(v, bool) or not isinstance(v, int) for v in values):
            raise ValueError(f"{key} must contain integers")
    if "cost" in data:
        cost = data["cost"]
        if len(cost) != s or any(len(row) != t for row in cost):
            raise ValueError(f"cost must be an {s}x{t} matrix")
        if any(isinstance(c, bool) or not isinstance(c, int) for row in cost for c in row):
            raise ValueError("cost entries must be integers")
        inst = ProblemInstance.create(cost, data["alpha"], data["alpha_cap"], data["beta"], data["beta_cap"])
    else:
        if len(data["points_a"]) != s or len(data["points_b"]) != t:
            raise ValueError("points_a/points_b lengths must match s/t")
        inst = from_points(
            data["points_a"],
            data["points_b"],
            data["alpha"],
            data["alpha_cap"],
            data["beta"],
            data["beta_cap"],
            metric=data["metric"],
            scale=data["scale"],
        )
    validate(inst)
    return inst


def load_instance(path: str | Path) -> ProblemInstance:
    with open(path) as fh:
        return instance_from_json(json.load(fh))


def dump_instance(instance: ProblemInstance, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(instance.to_json(), fh, sort_keys=True)
        fh.write("\n")
