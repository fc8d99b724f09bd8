"""Benchmark the two hot kernels on every available backend.

Usage:
    python benchmarks/bench_kernels.py

Compares the numba @njit path against the pure-numpy fallback on the two
workloads that dominate package runtime: measure-model evaluation over a
Stieltjes-inversion-sized scan, and the composite Simpson sums driven by the
adaptive quadrature oracle.  The active backend for the package itself is
chosen at import time (LIVCALC_NO_NUMBA=1 forces numpy).
"""

import time

import numpy as np

from livcalc import _kernels


def time_call(fn, *args, repeats=5):
    fn(*args)  # warm-up (numba compiles here)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def herglotz_workload():
    rng = np.random.default_rng(1)
    locs = rng.uniform(-2, 2, 8)
    weights = rng.uniform(0.1, 2.0, 8)
    dens_x = np.linspace(-20.0, 20.0, 4001)
    dens_w = rng.uniform(0.0, 0.01, 4001)
    zs = (np.linspace(-20.0, 20.0, 4001) + 1e-3j).astype(np.complex128)
    return locs, weights, dens_x, dens_w, zs


def simpson_workload():
    return complex(-1j * (5 + 5j) + 1.0), 2.0, 8192


def main():
    print(f"active backend: {'numba' if _kernels.USING_NUMBA else 'numpy'}")
    rows = []
    h_args = herglotz_workload()
    s_args = simpson_workload()
    for name, (herglotz, simpson) in sorted(_kernels.backends().items()):
        t_h = time_call(herglotz, *h_args)
        t_s = time_call(simpson, *s_args, repeats=20)
        rows.append((name, t_h, t_s))
    base = {name: (t_h, t_s) for name, t_h, t_s in rows}
    print(f"{'backend':>8} | {'herglotz_eval (4001 pts)':>26} | {'simpson_exp (8192 panels)':>26}")
    for name, t_h, t_s in rows:
        print(f"{name:>8} | {t_h * 1e3:>23.3f} ms | {t_s * 1e6:>23.1f} us")
    if "numba" in base and "numpy" in base:
        print(
            f"speedup  | {base['numpy'][0] / base['numba'][0]:>24.1f}x "
            f"| {base['numpy'][1] / base['numba'][1]:>24.1f}x"
        )


if __name__ == "__main__":
    main()
