"""Probe how the dummy-edge offsets affect the gadget optimum.

For each (k1, k2) pair, solves random instances twice: in integer cost
units (resolution 1) and in the refined units chosen by default, comparing
both against the flow and brute-force solvers. Mismatching instances are
written to ``--triage`` for inspection.

    python scripts/gamma_fuzz.py --count 200 --triage triage/gamma_fuzz
"""

import argparse

from mmdc import harness

OFFSETS = [(2, 1), (3, 1), (3, 2), (5, 1), (10, 1), (100, 99), (10**6, 1), (10**6, 10**6 - 1)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--triage", default="triage/gamma_fuzz")
    args = ap.parse_args()

    print(f"{'k1':>8} {'k2':>8} {'integer':>8} {'refined':>8}")
    for idx, offsets in enumerate(OFFSETS):
        base = harness.CheckConfig(count=args.count, seed=args.seed + idx, offsets=offsets)
        lit = harness.run_check(harness.CheckConfig(**{**base.__dict__, "resolution": 1, "dump_dir": args.triage}))
        ref = harness.run_check(harness.CheckConfig(**{**base.__dict__, "dump_dir": args.triage}))
        print(f"{offsets[0]:>8} {offsets[1]:>8} {len(lit.mismatches):>8} {len(ref.mismatches):>8}")


if __name__ == "__main__":
    main()
