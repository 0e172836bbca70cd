#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-NumPy fallbacks.

Times the two hot loops of the package, the simplex pivot loop of the LP
membership oracle and the inverse-CDF Monte Carlo sampler, on identical
inputs through both code paths and prints a small comparison table.

Usage:
    python benchmarks/bench_kernels.py [--grid 2048] [--points 200] [--mc 200000]
"""

import argparse
import time

import numpy as np

from chsh_steering import _accel
from chsh_steering.homodyne_experiment import (
    SinglePhotonState,
    _pair_sampler_arrays,
    standard_settings,
    state_density,
)
from chsh_steering.lhs_oracle import _membership_constraints


def build_phase1(A, b):
    m, n = A.shape
    flip = np.where(b < 0.0, -1.0, 1.0)
    A1, b1 = A * flip[:, None], b * flip
    tableau = np.zeros((m + 1, n + m + 1))
    tableau[:m, :n] = A1
    tableau[:m, n:n + m] = np.eye(m)
    tableau[:m, -1] = b1
    tableau[m, :n] = -A1.sum(axis=0)
    tableau[m, -1] = -b1.sum()
    return tableau, np.arange(n, n + m, dtype=np.int64)


def bench_simplex(kernel, A, targets):
    start = time.perf_counter()
    for b in targets:
        tableau, basis = build_phase1(A, b)
        kernel(tableau, basis, 1e-10, 1_000_000, 64)
    return time.perf_counter() - start


def bench_mc(kernel, u, arrays):
    grid, cdf_a, coef, cum_b = arrays
    start = time.perf_counter()
    kernel(u, grid, cdf_a, coef, cum_b)
    return time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid", type=int, default=2048)
    parser.add_argument("--points", type=int, default=200)
    parser.add_argument("--mc", type=int, default=200_000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.Generator(np.random.Philox(args.seed))
    A = _membership_constraints(args.grid)
    targets = [np.append(rng.uniform(-1.0, 1.0, 4), 1.0) for _ in range(args.points)]

    rho = state_density(SinglePhotonState(theta=np.deg2rad(22.5), p1=1.0))
    sa, sb = standard_settings(0.85, 0.85).pairs()[0]
    arrays = _pair_sampler_arrays(rho, sa, sb, 4096, 6.0)
    u = rng.random((args.mc, 2))

    rows = []
    if _accel.NUMBA_ENABLED:
        # warm the JIT before timing
        bench_simplex(_accel.simplex_pivots_numba, A, targets[:1])
        bench_mc(_accel.mc_products_numba, u[:100], arrays)
        rows.append(("simplex", "numba",
                     bench_simplex(_accel.simplex_pivots_numba, A, targets)))
        rows.append(("mc-sampler", "numba",
                     bench_mc(_accel.mc_products_numba, u, arrays)))
    else:
        print("numba unavailable or disabled; timing the NumPy path only")
    rows.append(("simplex", "numpy",
                 bench_simplex(_accel.simplex_pivots_numpy, A, targets)))
    rows.append(("mc-sampler", "numpy",
                 bench_mc(_accel.mc_products_numpy, u, arrays)))

    print(f"\ngrid={args.grid} points={args.points} mc_samples={args.mc}")
    print(f"{'kernel':<12} {'path':<7} {'seconds':>9}")
    for kernel, path, seconds in rows:
        print(f"{kernel:<12} {path:<7} {seconds:>9.3f}")
    for kernel in ("simplex", "mc-sampler"):
        times = {path: seconds for k, path, seconds in rows if k == kernel}
        if "numba" in times and "numpy" in times:
            print(f"{kernel}: numba is {times['numpy'] / times['numba']:.2f}x "
                  f"the numpy fallback")


if __name__ == "__main__":
    main()
