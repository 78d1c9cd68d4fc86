"""Cross-solver agreement runs and scaling benchmarks."""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import flow, gadget, oracle, solver
from .generate import GenSpec, generate
from .instance import Infeasible, ProblemInstance

METHODS = ("gadget", "flow", "brute")


@dataclass(frozen=True)
class CheckConfig:
    count: int = 100
    s_range: tuple[int, int] = (1, 3)
    t_range: tuple[int, int] = (1, 3)
    cost_lo: int = -9
    cost_hi: int = 9
    slack_range: tuple[int, int] = (0, 2)
    seed: int = 0
    methods: tuple[str, ...] = METHODS
    offsets: tuple[int, int] = gadget.DEFAULT_OFFSETS
    resolution: Optional[int] = None
    unconstrained_frac: float = 0.0
    max_cells: int = 20
    dump_dir: Optional[str] = None


@dataclass
class CheckReport:
    config: CheckConfig
    outcomes: list = field(default_factory=list)  # per instance: {method: total | None | "error: ..."}
    mismatches: list = field(default_factory=list)  # instance indices
    dumped: list = field(default_factory=list)  # paths of triage files

    @property
    def feasible_count(self) -> int:
        return sum(1 for o in self.outcomes if any(isinstance(v, int) for v in o.values()))

    def summary(self) -> str:
        ran = {m: sum(1 for o in self.outcomes if m in o) for m in METHODS}
        lines = [
            f"instances   {len(self.outcomes)}",
            f"feasible    {self.feasible_count}",
            f"infeasible  {len(self.outcomes) - self.feasible_count}",
        ]
        lines += [f"ran {m:<8}{ran[m]}" for m in METHODS if ran[m]]
        lines.append(f"mismatches  {len(self.mismatches)}")
        for k in self.mismatches:
            lines.append(f"  #{k}: {json.dumps(self.outcomes[k], sort_keys=True)}")
        return "\n".join(lines)


def draw_instance(rng: np.random.Generator, config: CheckConfig) -> ProblemInstance:
    s = int(rng.integers(config.s_range[0], config.s_range[1] + 1))
    t = int(rng.integers(config.t_range[0], config.t_range[1] + 1))
    slack = int(rng.integers(config.slack_range[0], config.slack_range[1] + 1))
    witness = bool(rng.random() >= config.unconstrained_frac)
    sub_seed = int(rng.integers(0, 2**63))
    return generate(GenSpec(s=s, t=t, cost_lo=config.cost_lo, cost_hi=config.cost_hi,
                            seed=sub_seed, slack=slack, witness=witness))


def run_methods(instance: ProblemInstance, config: CheckConfig) -> dict:
    """Optimal total per method; ``None`` means the method reported infeasible."""
    out = {}
    for method in config.methods:
        if method == "brute" and instance.s * instance.t > config.max_cells:
            continue
        try:
            if method == "gadget":
                out[method] = solver.solve_mmdc(instance, config.offsets, config.resolution).result.total_cost
            elif method == "flow":
                out[method] = flow.min_cost(instance).total_cost
            elif method == "brute":
                out[method] = oracle.brute_force(instance, oracle.EnumerationBudget(config.max_cells)).total_cost
            else:
                raise ValueError(f"unknown method {method!r}")
        except Infeasible:
            out[method] = None
        except solver.ReductionError as exc:
            out[method] = f"error: {exc}"
    return out


def run_check(config: CheckConfig) -> CheckReport:
    rng = np.random.default_rng(config.seed)
    report = CheckReport(config)
    for k in range(config.count):
        instance = draw_instance(rng, config)
        outcome = run_methods(instance, config)
        report.outcomes.append(outcome)
        if len(set(map(repr, outcome.values()))) > 1:
            report.mismatches.append(k)
            if config.dump_dir is not None:
                report.dumped.append(str(_dump_mismatch(config, k, instance, outcome)))
    return report


def _dump_mismatch(config: CheckConfig, k: int, instance: ProblemInstance, outcome: dict) -> Path:
    path = Path(config.dump_dir)
    path.mkdir(parents=True, exist_ok=True)
    target = path / f"mismatch_seed{config.seed}_{k:05d}.json"
    doc = {
        "instance": instance.to_json(),
        "outcome": outcome,
        "offsets": list(config.offsets),
        "resolution": config.resolution,
    }
    target.write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    return target


# -- benchmark ----------------------------------------------------------------

BENCH_HEADER = "n,s,t,gadget_nodes,build_ms,solve_ms,extract_ms"


def bench_instance(n: int, seed: int) -> ProblemInstance:
    """Proportional instance with s = t = n / 2 and bounds that scale with t."""
    half = max(1, n // 2)
    return generate(GenSpec(s=half, t=n - half, cost_lo=0, cost_hi=99, seed=seed,
                            slack=max(1, half // 4), density=0.5))


def run_bench(sizes, repeats: int = 3, seed: int = 0) -> list[dict]:
    rows = []
    for n in sizes:
        instance = bench_instance(n, seed)
        phases = {"build": [], "solve": [], "extract": []}
        nodes = None
        for _ in range(max(1, repeats)):
            rep = solver.solve_mmdc(instance)
            nodes = rep.n
            for phase in phases:
                phases[phase].append(rep.timings[phase])
        rows.append({
            "n": n, "s": instance.s, "t": instance.t, "gadget_nodes": nodes,
            **{f"{p}_ms": statistics.median(v) for p, v in phases.items()},
        })
    return rows


def bench_csv(rows: list[dict]) -> str:
    lines = [BENCH_HEADER]
    for r in rows:
        lines.append(f"{r['n']},{r['s']},{r['t']},{r['gadget_nodes']},"
                     f"{r['build_ms']:.3f},{r['solve_ms']:.3f},{r['extract_ms']:.3f}")
    return "\n".join(lines) + "\n"


def growth_exponents(rows: list[dict], key: str = "solve_ms") -> list[float]:
    """Exponent of ``key`` against n between consecutive rows (log ratio / log size ratio)."""
    out = []
    for a, b in zip(rows, rows[1:]):
        out.append(math.log(b[key] / a[key]) / math.log(b["n"] / a["n"]))
    return out
