#!/usr/bin/env python3
"""Benchmark the numba kernel against the pure-numpy fallback.

Times the per-trial evaluation kernel on synthetic workloads and a full sweep
point end to end.  The numba path is warmed up first so compilation is not
billed.  Run:  python benchmarks/bench_backends.py
"""

import time

import numpy as np

from cogcell.config import SystemConfig
from cogcell.geometry import classify_scenario, region_areas, region_boundaries
from cogcell.kernels import HAVE_NUMBA, evaluate_trials
from cogcell.learning import binom_tail_table, distance_to_snr_db
from cogcell.simulate import run_sweep


def _workload(n_trials, k_total, seed=0):
    cfg = SystemConfig()
    d1 = 0.25
    rng = np.random.default_rng(seed)
    samples = 20.0 + 15.0 * rng.standard_normal((n_trials, k_total))
    scenario = classify_scenario(d1, cfg)
    areas = region_areas(scenario, d1, cfg)
    inner, outer = region_boundaries(scenario, d1, cfg)
    t_in = float(distance_to_snr_db(inner, d1, cfg.target_snr_db))
    t_out = float(distance_to_snr_db(outer, d1, cfg.target_snr_db))
    tail = binom_tail_table(k_total)
    return samples, t_in, t_out, tail, cfg.ip_constraint_eta, areas.region_km2, areas.interference_km2


def _time(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernel():
    print(f"{'trials':>8} {'K':>5} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>8}")
    for n_trials, k_total in [(10_000, 50), (10_000, 200), (100_000, 50), (100_000, 200)]:
        args = _workload(n_trials, k_total)
        evaluate_trials(*args, backend="numpy")
        t_np = _time(lambda: evaluate_trials(*args, backend="numpy"))
        if HAVE_NUMBA:
            evaluate_trials(*args, backend="numba")  # warm-up / compile
            t_nb = _time(lambda: evaluate_trials(*args, backend="numba"))
            print(f"{n_trials:>8} {k_total:>5} {t_np * 1e3:>12.3f} {t_nb * 1e3:>12.3f} {t_np / t_nb:>8.2f}x")
        else:
            print(f"{n_trials:>8} {k_total:>5} {t_np * 1e3:>12.3f} {'n/a':>12} {'n/a':>8}")

    a_np, _ = evaluate_trials(*_workload(10_000, 50), backend="numpy")
    if HAVE_NUMBA:
        a_nb, _ = evaluate_trials(*_workload(10_000, 50), backend="numba")
        identical = bool(np.array_equal(a_np, a_nb))
        print(f"backends bit-identical on shared draws: {identical}")


def bench_sweep():
    import os

    cfg = SystemConfig(measurement_mode="noisy")
    grid = np.arange(0.04, 0.601, 0.04)
    for backend in ("numpy", "numba") if HAVE_NUMBA else ("numpy",):
        os.environ["COGCELL_BACKEND"] = backend
        run_sweep(cfg, grid[:2], 1000, seed=1)  # warm-up
        t = _time(lambda: run_sweep(cfg, grid, 10_000, seed=1), repeats=2)
        print(f"full noisy sweep ({len(grid)} points x 10k trials), {backend:>5}: {t:.2f} s")
    os.environ.pop("COGCELL_BACKEND", None)


if __name__ == "__main__":
    bench_kernel()
    bench_sweep()
