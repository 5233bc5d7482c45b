"""Iteration counts and worst one-step error ratio on random partitions, grouped by N."""

import argparse
import math
import time

import numpy as np

from blaschke_interp import Partition, SolverConfig, convergence_ratio, solve


def random_partition(rng, n, min_length):
    lengths = min_length + (2 * math.pi - n * min_length) * rng.dirichlet(np.ones(n))
    lengths[-1] = 2 * math.pi - lengths[:-1].sum()
    return Partition.from_lengths(lengths, start=rng.uniform(0, 2 * math.pi))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[2, 4, 8, 16, 32])
    ap.add_argument("--cases", type=int, default=20)
    ap.add_argument("--epsilon", type=float, default=1e-6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    config = SolverConfig(epsilon=args.epsilon)
    print(f"{'N':>4} {'median it':>10} {'max it':>8} {'max ratio':>10} {'ms/case':>9}")
    for n in args.sizes:
        iters, ratios = [], []
        t0 = time.perf_counter()
        for _ in range(args.cases):
            _, trace = solve(random_partition(rng, n, math.pi / (8 * n)), config)
            iters.append(trace.iterations)
            if len(trace.steps) >= 2:
                ratios.append(convergence_ratio(trace))
        ms = 1e3 * (time.perf_counter() - t0) / args.cases
        worst = max(ratios) if ratios else float("nan")
        print(f"{n:>4} {np.median(iters):>10.0f} {max(iters):>8d} {worst:>10.6f} {ms:>9.1f}")


if __name__ == "__main__":
    main()
