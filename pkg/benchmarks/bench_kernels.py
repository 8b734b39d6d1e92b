#!/usr/bin/env python3
"""Benchmark: compiled kernels vs the pure-Python reference.

Times the three hot paths (bulk distance evaluation, the difference-field
grids used for seeding, and the Newton polish) on each backend and prints a
small table.  Run after building the extension:

    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from anning._kernels import _reference

try:
    from anning._kernels import _speedups
except ImportError:
    _speedups = None


def timeit(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(impl):
    rng = np.random.default_rng(0)
    out = {}

    px = rng.uniform(-4, 4, size=200_000)
    py = rng.uniform(-4, 4, size=200_000)
    params = np.array([3.3])
    out["dist_many lp(3.3), 200k pts"] = timeit(
        lambda: impl.dist_many(0, params, px, py, 0.3, -0.2)
    )

    torus = np.array([1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0])
    out["dist_many torus, 200k pts"] = timeit(
        lambda: impl.dist_many(3, torus, px, py, 0.3, 0.2)
    )

    sx = np.array([0.0, 2.0, 0.4])
    sy = np.array([0.0, 0.3, 1.8])
    w = np.array([0.1, -0.2, 0.3])
    gx, gy = np.meshgrid(np.linspace(-5, 5, 257), np.linspace(-5, 5, 257))
    out["weighted_diffs 257x257 grid"] = timeit(
        lambda: impl.weighted_diffs(0, params, sx, sy, w, gx.ravel(), gy.ravel())
    )

    seeds = rng.uniform(-3, 3, size=(200, 2))

    def newton_batch():
        for x0, y0 in seeds:
            impl.newton3(0, params, sx, sy, w, x0, y0, 1e-6, 1e-9, 50)

    out["newton3 x200 seeds"] = timeit(newton_batch, repeat=3)
    return out


def main():
    backends = [("python", _reference)]
    if _speedups is not None:
        backends.append(("compiled", _speedups))
    results = {name: bench_backend(impl) for name, impl in backends}

    names = list(results[backends[0][0]].keys())
    width = max(len(n) for n in names)
    header = f"{'benchmark':<{width}}"
    for name, _ in backends:
        header += f"  {name:>12}"
    if _speedups is not None:
        header += f"  {'speedup':>8}"
    print(header)
    for bench in names:
        line = f"{bench:<{width}}"
        for name, _ in backends:
            line += f"  {results[name][bench] * 1e3:>10.2f}ms"
        if _speedups is not None:
            ratio = results["python"][bench] / results["compiled"][bench]
            line += f"  {ratio:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
