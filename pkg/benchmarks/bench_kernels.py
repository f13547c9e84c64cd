#!/usr/bin/env python3
"""Benchmark the numba-compiled kernels against the pure-NumPy fallbacks.

The three hot loops behind the finite-difference eigensolver and the
classical integrator are timed on realistic workloads: the Sturm-count
sweep (dominant cost of eigenvalue bisection), the pivoted tridiagonal
solve (inverse iteration), and the fixed-step RK4 integrator.

Run:  python benchmarks/bench_kernels.py [--points 8000] [--repeats 20]

Representative results (x86-64 container, numba 0.66 / numpy 2.2):

    kernel                                numba      numpy    speedup
    sturm_counts (N=8000, 72 sweeps)    0.0307s    4.0646s     132.6x
    tridiag_solve (N=8000, 24 solves)   0.0048s    0.3854s      80.5x
    rk4_radial (20000 steps)            0.0007s    0.0266s      37.0x
"""

import argparse
import math
import time

import numpy as np

from nlosc import _kernels
from nlosc.spectra import PotentialSpec, potential_on_grid


def _fd_matrix(points: int):
    spec = PotentialSpec(kind="nonlinear", omega=1.0, a=math.sqrt(0.5))
    h = 24.0 / points
    xs = -12.0 + h * np.arange(1, points)
    diag = 1.0 / h**2 + potential_on_grid(spec, xs)
    off = np.full(len(xs) - 1, -0.5 / h**2)
    return diag, off


def _time(fn, repeats: int) -> float:
    fn()  # warm-up (and numba compilation)
    start = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - start) / repeats


def bench(points: int, repeats: int, sweeps: int, solves: int, steps: int):
    diag, off = _fd_matrix(points)
    off2 = off * off
    shifts = np.linspace(-2.0, 6.0, 6)
    lower = np.zeros(points - 1)
    lower[1:] = off
    upper = np.zeros(points - 1)
    upper[: points - 2] = off
    shifted = diag - (-1.5 + 1e-9)
    rhs = np.sin(0.37 * np.arange(points - 1))

    def sturm_numba():
        for _ in range(sweeps):
            _kernels.sturm_counts_numba(diag, off2, shifts)

    def sturm_numpy():
        for _ in range(sweeps):
            _kernels.sturm_counts_numpy(diag, off2, shifts)

    def solve_numba():
        for _ in range(solves):
            _kernels.tridiag_solve_numba(lower, shifted, upper, rhs)

    def solve_numpy():
        for _ in range(solves):
            _kernels.tridiag_solve_numpy(lower, shifted, upper, rhs)

    def rk4_numba():
        _kernels.rk4_radial_numba(0.5, 0.0, 1.0, 1.0, math.pi / 2000, steps)

    def rk4_numpy():
        _kernels.rk4_radial_numpy(0.5, 0.0, 1.0, 1.0, math.pi / 2000, steps)

    rows = [
        (
            f"sturm_counts (N={points}, {sweeps} sweeps)",
            _time(sturm_numba, repeats),
            _time(sturm_numpy, max(1, repeats // 10)),
        ),
        (
            f"tridiag_solve (N={points}, {solves} solves)",
            _time(solve_numba, repeats),
            _time(solve_numpy, max(1, repeats // 10)),
        ),
        (
            f"rk4_radial ({steps} steps)",
            _time(rk4_numba, repeats),
            _time(rk4_numpy, max(1, repeats // 10)),
        ),
    ]
    print(f"{'kernel':<36} {'numba':>10} {'numpy':>10} {'speedup':>10}")
    for name, t_numba, t_numpy in rows:
        print(
            f"{name:<36} {t_numba:>9.4f}s {t_numpy:>9.4f}s "
            f"{t_numpy / t_numba:>9.1f}x"
        )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=8000)
    parser.add_argument("--repeats", type=int, default=20)
    parser.add_argument("--sweeps", type=int, default=72)
    parser.add_argument("--solves", type=int, default=24)
    parser.add_argument("--steps", type=int, default=20000)
    args = parser.parse_args()
    if _kernels.BACKEND != "numba":
        raise SystemExit(
            "this benchmark compares both paths and needs numba importable; "
            "unset NLOSC_BACKEND or install numba"
        )
    bench(args.points, args.repeats, args.sweeps, args.solves, args.steps)


if __name__ == "__main__":
    main()
