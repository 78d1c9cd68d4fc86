"""Command-line entry point: ``mmdc {solve,gen,check,bench}``.

Exit codes: 0 success, 1 error, 2 infeasible instance, 3 solver mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import flow, gadget, harness, hungarian, oracle, solver
from .generate import GenSpec, generate
from .instance import Infeasible, MatchResult, ValidationError, dump_instance, load_instance, violations

EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE, EXIT_MISMATCH = 0, 1, 2, 3


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _result_doc(result: MatchResult | None, gadget_nodes, phase_ms: dict) -> dict:
    if result is None:
        return {"feasible": False, "pairs": [], "total_cost": None,
                "gadget_nodes": gadget_nodes, "phase_ms": phase_ms}
    return {"feasible": True, "pairs": [list(p) for p in result.pairs], "total_cost": result.total_cost,
            "gadget_nodes": gadget_nodes, "phase_ms": phase_ms}


def cmd_solve(args) -> int:
    instance = load_instance(args.input)
    gadget_nodes = None
    phase_ms: dict = {}
    result = None
    if args.dump_gadget:
        with open(args.dump_gadget, "w") as fh:
            fh.write(gadget.dump(gadget.build(instance)))
    try:
        if args.method == "gadget":
            gadget_nodes = gadget.side_counts(instance)[0]
            report = solver.solve_mmdc(instance)
            result, phase_ms = report.result, {k: round(v, 3) for k, v in report.timings.items()}
        else:
            start = time.perf_counter()
            if args.method == "flow":
                result = flow.min_cost(instance)
            else:
                result = oracle.brute_force(instance, oracle.EnumerationBudget(args.max_cells))
            phase_ms = {"solve": round(1e3 * (time.perf_counter() - start), 3)}
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
    if args.verify and result is not None:
        problems = violations(instance, result)
        if args.method == "gadget":
            g = gadget.build(instance)
            m = hungarian.materialize(g)
            if not hungarian.verify_certificate(m, hungarian.solve(m)):
                problems.append("dual certificate rejected")
        if problems:
            print("verification failed: " + "; ".join(problems), file=sys.stderr)
            return EXIT_ERROR
    _emit(json.dumps(_result_doc(result, gadget_nodes, phase_ms), sort_keys=True) + "\n", args.output)
    return EXIT_OK if result is not None else EXIT_INFEASIBLE


def cmd_gen(args) -> int:
    spec = GenSpec(s=args.s, t=args.t, cost_lo=args.cost_lo, cost_hi=args.cost_hi, seed=args.seed,
                   slack=args.slack, density=args.density, witness=not args.unconstrained)
    instance = generate(spec)
    if args.output is None:
        _emit(json.dumps(instance.to_json(), sort_keys=True) + "\n", None)
    else:
        dump_instance(instance, args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    config = harness.CheckConfig(
        count=args.count,
        s_range=tuple(args.s_range),
        t_range=tuple(args.t_range),
        cost_lo=args.cost_lo,
        cost_hi=args.cost_hi,
        slack_range=tuple(args.slack_range),
        seed=args.seed,
        methods=tuple(args.methods),
        offsets=tuple(args.offsets),
        resolution=args.resolution,
        unconstrained_frac=args.unconstrained_frac,
        max_cells=args.max_cells,
        dump_dir=args.dump_dir,
    )
    report = harness.run_check(config)
    _emit(report.summary() + "\n", args.output)
    return EXIT_MISMATCH if report.mismatches else EXIT_OK


def cmd_bench(args) -> int:
    rows = harness.run_bench(args.sizes, repeats=args.repeats, seed=args.seed)
    _emit(harness.bench_csv(rows), args.output)
    for (a, b), k in zip(zip(rows, rows[1:]), harness.growth_exponents(rows)):
        print(f"solve-time exponent n={a['n']}->{b['n']}: {k:.2f}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mmdc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.add_argument("--method", choices=("gadget", "flow", "brute"), default="gadget")
    p.add_argument("--verify", action="store_true", help="re-check bounds and the dual certificate")
    p.add_argument("--dump-gadget", metavar="PATH")
    p.add_argument("--max-cells", type=int, default=20)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="write a random instance")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--cost-lo", type=int, default=-9)
    p.add_argument("--cost-hi", type=int, default=9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--slack", type=int, default=1)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--unconstrained", action="store_true", help="draw bounds without a witness (may be infeasible)")
    p.add_argument("--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="cross-check solvers on random instances")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--s-range", type=int, nargs=2, default=(1, 3), metavar=("LO", "HI"))
    p.add_argument("--t-range", type=int, nargs=2, default=(1, 3), metavar=("LO", "HI"))
    p.add_argument("--cost-lo", type=int, default=-9)
    p.add_argument("--cost-hi", type=int, default=9)
    p.add_argument("--slack-range", type=int, nargs=2, default=(0, 2), metavar=("LO", "HI"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--methods", nargs="+", choices=harness.METHODS, default=list(harness.METHODS))
    p.add_argument("--offsets", type=int, nargs=2, default=gadget.DEFAULT_OFFSETS, metavar=("K1", "K2"),
                   help="gamma1 = gamma - K1, gamma2 = gamma - K2 in gadget units")
    p.add_argument("--resolution", type=int, default=None,
                   help="gadget units per cost unit (default: smallest exact value)")
    p.add_argument("--unconstrained-frac", type=float, default=0.0)
    p.add_argument("--max-cells", type=int, default=20)
    p.add_argument("--dump-dir", default="mismatches")
    p.add_argument("--output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bench", help="time the gadget solver on proportional instances")
    p.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32])
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, ValidationError, gadget.BuildError, hungarian.OverflowRisk,
            oracle.BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
