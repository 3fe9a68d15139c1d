#!/usr/bin/env python3
"""Timing comparison of the numba kernels against the numpy fallback.

The backend is selected per call through the QQWALK_BACKEND environment
variable, so both paths can be driven from one process:

    python3 benchmarks/bench_backends.py --steps 2000 --repeat 5
"""

import argparse
import math
import os
import time

import numpy as np

import qqwalk._kernels as kernels
from qqwalk import Quaternion
from qqwalk.coin import random_coin, split_pq
from qqwalk.exact import xi_bruteforce
from qqwalk.walk import evolve, evolve_fourier


def timed(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=2000)
    parser.add_argument("--brute-n", type=int, default=13,
                        help="l + m for the path enumeration benchmark")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    coin = random_coin(rng)
    ops = split_pq(coin)
    alpha, beta = Quaternion(1), Quaternion.zero()
    l = args.brute_n // 2
    m = args.brute_n - l

    cases = {
        f"evolve quaternion rep, {args.steps} steps":
            lambda: evolve(coin, alpha, beta, args.steps),
        f"evolve 4-component complex rep, {args.steps} steps":
            lambda: evolve_fourier(coin, alpha, beta, args.steps),
        f"path enumeration l={l}, m={m} ({math.comb(l + m, l)} paths)":
            lambda: xi_bruteforce(ops, l, m),
    }

    backends = ["numpy"]
    if kernels.HAVE_NUMBA:
        backends.insert(0, "numba")
    else:
        print("numba not importable; timing the numpy path only")

    results = {}
    for backend in backends:
        os.environ[kernels.ENV_VAR] = backend
        for name, fn in cases.items():
            fn()  # warm-up (JIT compile / cache load)
            results[(backend, name)] = timed(fn, args.repeat)
    os.environ.pop(kernels.ENV_VAR, None)

    width = max(len(name) for name in cases)
    header = f"{'kernel':<{width}}  " + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name in cases:
        row = f"{name:<{width}}  "
        for b in backends:
            row += f"{results[(b, name)] * 1e3:>10.2f}ms"
        if len(backends) == 2:
            row += f"{results[('numpy', name)] / results[('numba', name)]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
