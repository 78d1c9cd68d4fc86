"""Seeded random instances.

Witness mode draws a 0/1 pair matrix first and places every bound around
its row and column sums, so the witness itself is a feasible matching.
Unconstrained mode draws each bound pair independently and is the source of
infeasible instances for the agreement tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instance import ProblemInstance


@dataclass(frozen=True)
class GenSpec:
    s: int
    t: int
    cost_lo: int = -9
    cost_hi: int = 9
    seed: int = 0
    slack: int = 1
    density: float = 0.5
    witness: bool = True

    def __post_init__(self):
        if self.s < 1 or self.t < 1:
            raise ValueError(f"s and t must be >= 1, got s={self.s}, t={self.t}")
        if self.cost_lo > self.cost_hi:
            raise ValueError(f"empty cost range [{self.cost_lo}, {self.cost_hi}]")
        if self.slack < 0:
            raise ValueError(f"slack must be >= 0, got {self.slack}")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError(f"density must be in [0, 1], got {self.density}")


def _bounds_around(sums: np.ndarray, limit: int, slack: int, rng: np.random.Generator):
    down = rng.integers(0, slack + 1, size=sums.shape)
    up = rng.integers(0, slack + 1, size=sums.shape)
    return np.maximum(sums - down, 0), np.minimum(sums + up, limit)


def _free_bounds(size: int, limit: int, rng: np.random.Generator):
    lo = rng.integers(0, limit + 1, size=size)
    hi = lo + rng.integers(0, limit + 1, size=size)
    return lo, np.minimum(hi, limit)


def generate(spec: GenSpec) -> ProblemInstance:
    rng = np.random.default_rng(spec.seed)
    s, t = spec.s, spec.t
    cost = rng.integers(spec.cost_lo, spec.cost_hi + 1, size=(s, t))
    if spec.witness:
        x = rng.random((s, t)) < spec.density
        alpha, alpha_cap = _bounds_around(x.sum(axis=1), t, spec.slack, rng)
        beta, beta_cap = _bounds_around(x.sum(axis=0), s, spec.slack, rng)
    else:
        alpha, alpha_cap = _free_bounds(s, t, rng)
        beta, beta_cap = _free_bounds(t, s, rng)
    return ProblemInstance.create(cost.tolist(), alpha.tolist(), alpha_cap.tolist(), beta.tolist(), beta_cap.tolist())
