"""Benchmark the compiled simulation kernels against the numpy fallbacks.

Runs the same seeded workloads under POWERBUF_BACKEND=numba and =numpy
and reports wall time plus the simulated power, so any backend
discrepancy beyond Monte Carlo noise is visible alongside the speedup.
The first numba call is a discarded warmup (JIT compilation).

Usage:
    python benchmarks/bench_backends.py [--cycles N] [--reps N]
"""

import argparse
import os
import time

from powerbuf import (
    TrafficProfile, constant, default_table2_profile, erlang, exponential,
    hyperexp2_fit, optimal_interval, optimal_size,
)
from powerbuf.sim import (
    FixedInterval, FixedSize, NoBuffer, SimConfig, estimate_stopping, run,
)


def workloads(cycles, reps):
    hw = default_table2_profile()
    tr_const = TrafficProfile(1.0, constant(128))
    tr_exp = TrafficProfile(1.0, exponential(128))
    tr_hyp = TrafficProfile(0.1, hyperexp2_fit(128, 1.723, 2.718))
    items = [
        ("fixed_size/constant",
         lambda: run(SimConfig(hardware=hw, traffic=tr_const,
                               policy=FixedSize(optimal_size(hw, tr_const)),
                               cycles=cycles, seed=1)).avg_power),
        ("fixed_size/hyperexp",
         lambda: run(SimConfig(hardware=hw, traffic=tr_hyp,
                               policy=FixedSize(optimal_size(hw, tr_hyp)),
                               cycles=cycles, seed=2)).avg_power),
        ("fixed_interval/exponential",
         lambda: run(SimConfig(hardware=hw, traffic=tr_exp,
                               policy=FixedInterval(
                                   optimal_interval(hw, tr_exp)),
                               cycles=cycles, seed=3)).avg_power),
        ("no_buffer/exponential",
         lambda: run(SimConfig(hardware=hw, traffic=tr_exp,
                               policy=NoBuffer(), cycles=cycles,
                               seed=4)).avg_power),
        ("stopping/erlang4",
         lambda: estimate_stopping(erlang(4, 4 / 128), 12800.0,
                                   reps=reps, seed=5)[1]),
    ]
    return items


def time_call(fn, repeat=3):
    best = float("inf")
    value = None
    for _ in range(repeat):
        start = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - start)
    return best, value


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cycles", type=int, default=100_000)
    parser.add_argument("--reps", type=int, default=100_000)
    args = parser.parse_args()

    results = {}
    for backend in ("numba", "numpy"):
        os.environ["POWERBUF_BACKEND"] = backend
        if backend == "numba":
            try:
                for _, fn in workloads(200, 1000):
                    fn()  # warmup: compile outside the timed region
            except ImportError:
                print("numba not importable; skipping compiled backend")
                continue
        for name, fn in workloads(args.cycles, args.reps):
            results.setdefault(name, {})[backend] = time_call(fn)

    print(f"{'workload':28s} {'numba':>12s} {'numpy':>12s} "
          f"{'speedup':>8s}  values (numba/numpy)")
    for name, per_backend in results.items():
        tn, vn = per_backend.get("numba", (float("nan"), float("nan")))
        tp, vp = per_backend["numpy"]
        print(f"{name:28s} {tn:10.3f} s {tp:10.3f} s {tp / tn:7.1f}x  "
              f"{vn:.4f} / {vp:.4f}")


if __name__ == "__main__":
    main()
