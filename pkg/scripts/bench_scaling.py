"""Time the gadget solver on proportional instances and fit the growth exponent.

    python scripts/bench_scaling.py --sizes 8 16 32 48 --repeats 3 --out bench.csv
"""

import argparse

import numpy as np

from mmdc import harness


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out")
    args = ap.parse_args()

    rows = harness.run_bench(args.sizes, repeats=args.repeats, seed=args.seed)
    csv = harness.bench_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv)
    print(csv, end="")
    n = np.log([r["n"] for r in rows])
    for key in ("gadget_nodes", "solve_ms"):
        slope = np.polyfit(n, np.log([r[key] for r in rows]), 1)[0]
        print(f"fitted exponent of {key} in n: {slope:.2f}")


if __name__ == "__main__":
    main()
