#!/usr/bin/env python3
"""Benchmark the compiled extension core against the pure-Python fallback.

Two workloads dominated by the hot kernel:

* point evaluation of erfcx over a plane-covering sample (series, rational
  and continued-fraction regions all exercised);
* a domain-map style sweep: the full regularization ladder of the
  half-line kernel sqrt(pi)/(2 sqrt(lambda)) erfcx(-i z / (2 sqrt(lambda)))
  with early exit on blow-up, over an n x n grid.

Usage: python benchmarks/bench_backends.py [n_points] [grid_n]
"""
import cmath
import math
import sys
import time

from plemelj import _erfcx_py

try:
    from plemelj import _erfcx_ext
except ImportError:
    _erfcx_ext = None

SQRT_PI = math.sqrt(math.pi)
LAMBDAS = tuple(10.0 ** (-0.5 * n) for n in range(13))


def sample_points(n):
    pts = []
    for k in range(n):
        r = 10.0 ** (-2.0 + 3.3 * ((k * 0.6180339887498949) % 1.0))
        theta = -math.pi + 2.0 * math.pi * ((k * 0.7548776662466927) % 1.0)
        pts.append(cmath.rect(r, theta))
    return pts


def bench_pointwise(core, pts):
    f = core.erfcx_complex
    t0 = time.perf_counter()
    acc = 0.0
    for w in pts:
        v = f(w)
        if math.isfinite(v.real):
            acc += v.real
    dt = time.perf_counter() - t0
    return dt, acc


def bench_sweep(core, n):
    f = core.erfcx_complex
    t0 = time.perf_counter()
    divergence_threshold = 1e6
    n_div = 0
    for i in range(n):
        for j in range(n):
            z = complex(-2.0 + 4.0 * i / (n - 1), -2.0 + 4.0 * j / (n - 1))
            if abs(z) < 1e-14:
                continue
            for lam in LAMBDAS:
                sq = math.sqrt(lam)
                w = complex(0.5 * z.imag / sq, -0.5 * z.real / sq)
                v = f(w)
                if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                    n_div += 1
                    break
                if abs(0.5 * SQRT_PI / sq * v) > divergence_threshold:
                    n_div += 1
                    break
    dt = time.perf_counter() - t0
    return dt, n_div


def main():
    n_points = int(sys.argv[1]) if len(sys.argv) > 1 else 200_000
    grid_n = int(sys.argv[2]) if len(sys.argv) > 2 else 81
    cores = [("python", _erfcx_py)]
    if _erfcx_ext is not None:
        cores.insert(0, ("compiled", _erfcx_ext))
    else:
        print("compiled extension not built; benchmarking fallback only")

    print(f"pointwise erfcx, {n_points} plane-covering points:")
    times = {}
    for name, core in cores:
        dt, acc = bench_pointwise(core, sample_points(n_points))
        times[name] = dt
        rate = n_points / dt / 1e6
        print(f"  {name:9s} {dt:8.3f} s   {rate:6.2f} M evals/s   (checksum {acc:.6g})")
    if len(times) == 2:
        print(f"  speedup   {times['python'] / times['compiled']:.1f}x")

    print(f"kernel-limit sweep, {grid_n} x {grid_n} grid x {len(LAMBDAS)} lambdas:")
    times = {}
    for name, core in cores:
        dt, n_div = bench_sweep(core, grid_n)
        times[name] = dt
        print(f"  {name:9s} {dt:8.3f} s   ({n_div} divergent points)")
    if len(times) == 2:
        print(f"  speedup   {times['python'] / times['compiled']:.1f}x")


if __name__ == "__main__":
    main()
