"""Empirical scaling of preprocessing, feasibility tests and both solvers.

Usage: python3 scripts/scaling.py [--seeds 5] [--balanced]
"""

import argparse
import math

import numpy as np

from treecenter.cli import CANDIDATE_BENCH_LIMIT, bench_suite


def slope(xs, ys) -> float:
    """Least-squares exponent of ys against xs on a log-log scale."""
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--balanced", action="store_true")
    args = ap.parse_args()

    rows = bench_suite([(1000, 4), (10000, 4), (100000, 4)], args.seeds, args.balanced)
    for r in rows:
        print(f"n={r['n']:>6} p=4  feasibility {r['feasibility_ms']:.3f} ms  "
              f"preprocessing {r['preprocessing_ms']:.1f} ms  solve {r['solve_ms']:.1f} ms")
    fit = slope([r["n"] for r in rows], [r["feasibility_ms"] for r in rows])
    print(f"feasibility-time exponent in n: {fit:.3f} (sublinear below 0.5)")

    sizes = [(2**k, 4) for k in range(12, 18)]
    rows = bench_suite(sizes, args.seeds, args.balanced)
    ratios = [b["preprocessing_ms"] / a["preprocessing_ms"] for a, b in zip(rows, rows[1:])]
    print("preprocessing ratio per doubling:", " ".join(f"{x:.2f}" for x in ratios))

    n = min(10000, CANDIDATE_BENCH_LIMIT)
    rows = bench_suite([(n, p) for p in (2, 4, 8, 16)], args.seeds, args.balanced)
    budget = 2 * math.log2(n * (n - 1) / 2 + 1) + 2
    for r in rows:
        print(f"n={n} p={r['p']:>2}  candidate calls {r['candidate_calls']}  "
              f"parametric calls {r['feasibility_calls']}  (budget {budget:.1f})")


if __name__ == "__main__":
    main()
