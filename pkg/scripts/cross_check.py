"""Cross-check both solvers and the feasibility test against brute-force references.

Usage: python3 scripts/cross_check.py [--count 500] [--seed 0]
"""

import argparse
import random
import time
from fractions import Fraction

from treecenter.feasibility import feasibility_test, preprocess
from treecenter.generate import oracle_corpus
from treecenter.optimizer import solve_candidate, solve_parametric
from treecenter.oracle import OracleTree, exhaustive_solve, greedy_feasible


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    mismatches = 0
    start = time.perf_counter()
    for i, t, p in oracle_corpus(args.count, seed=args.seed):
        pre = preprocess(t)
        ref = exhaustive_solve(t, p).alpha_star
        cand = solve_candidate(t, p, pre).alpha_star
        par = solve_parametric(t, p, pre).alpha_star
        if not ref == cand == par:
            mismatches += 1
            print(f"instance {i} (n={t.n}, p={p}): oracle {ref} candidate {cand} parametric {par}")
        ot = OracleTree(t)
        for _ in range(10):
            alpha = ref * Fraction(rng.randint(0, 2000), 1000)
            q = rng.randint(1, 8)
            if feasibility_test(pre, alpha, q).feasible != greedy_feasible(ot, alpha, q).feasible:
                mismatches += 1
                print(f"instance {i}: feasibility disagrees at alpha={alpha}, p={q}")
    print(f"{args.count} instances, {mismatches} mismatches, {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
