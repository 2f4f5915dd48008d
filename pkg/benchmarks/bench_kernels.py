#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the NumPy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from aermkit.kernels import _ref

try:
    from aermkit.kernels import _core
except ImportError:
    _core = None


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_l1_project(backend):
    rng = np.random.default_rng(0)
    vs = rng.normal(size=(2000, 50)) * 3

    def run():
        for v in vs:
            backend.l1_project(v, 1.0)
    return run


def bench_pgd(backend):
    rng = np.random.default_rng(1)
    problems = []
    for _ in range(200):
        G = rng.uniform(-1, 1, (1000, 10))
        A = np.ascontiguousarray(G.T @ G / 1000)
        b = np.ascontiguousarray(G.T @ rng.normal(size=1000) / 1000)
        step = 1.0 / (2 * np.linalg.eigvalsh(A)[-1])
        problems.append((A, b, step))
    x0 = np.zeros(10)

    def run():
        for A, b, step in problems:
            backend.l1_quadratic_min(A, b, 1.0, 0.5, x0, step, 10000, 1e-9)
    return run


def bench_pinball(backend):
    rng = np.random.default_rng(2)
    y = np.sort(rng.normal(size=5000))
    w = rng.multinomial(5000, np.full(5000, 1 / 5000)).astype(float)
    thetas = np.linspace(-2, 2, 200)

    def run():
        backend.pinball_risk(y, w, thetas, 0.5, 5000.0)
    return run


def bench_binom_coverage(backend):
    grid = np.linspace(0, 1, 20001)

    def run():
        backend.binom_window_coverage(2000, 0.02, grid)
    return run


BENCHES = [
    ("l1_project (2000 x p=50)", bench_l1_project),
    ("pgd quadratic (200 solves, p=10)", bench_pgd),
    ("pinball risk (m=5000, 200 thetas)", bench_pinball),
    ("binomial coverage (m=2000, 20001 p)", bench_binom_coverage),
]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _core is None:
        print("compiled backend not built; timing the fallback only")
    print(f"{'kernel':38s} {'numpy':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, make in BENCHES:
        t_ref = timeit(make(_ref), args.repeat)
        if _core is not None:
            t_core = timeit(make(_core), args.repeat)
            print(f"{name:38s} {t_ref * 1e3:9.1f}ms {t_core * 1e3:9.1f}ms "
                  f"{t_ref / t_core:7.1f}x")
        else:
            print(f"{name:38s} {t_ref * 1e3:9.1f}ms {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
