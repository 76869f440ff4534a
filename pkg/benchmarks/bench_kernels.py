"""Throughput comparison: compiled kernel vs pure-Python fallback.

Times composite_gain_db over batches shaped like a simulation run (one angle
pair per UAV step).  Run from the repo root after an editable install:

    python benchmarks/bench_kernels.py [--size 200000] [--repeats 5]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from skybeam.kernels import reference

try:
    from skybeam.kernels import _core
except ImportError:
    _core = None


def _inputs(size: int, seed: int = 7):
    rng = np.random.default_rng(seed)
    theta = rng.uniform(30.0, 150.0, size)
    phi = rng.uniform(-180.0, 180.0, size)
    steer_theta = rng.uniform(60.0, 120.0, size)
    steer_phi = rng.uniform(-60.0, 60.0, size)
    return [np.ascontiguousarray(a) for a in (theta, phi, steer_theta, steer_phi)]


def _time(fn, args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=200_000, help="angles per batch")
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--m", type=int, default=16)
    ap.add_argument("--n", type=int, default=16)
    opts = ap.parse_args()

    theta, phi, st, sp = _inputs(opts.size)
    args = (theta, phi, st, sp, opts.m, opts.n, 0.5, 0.5,
            None, None, 8.0, 65.0, 30.0, 30.0)

    t_ref = _time(reference.composite_gain_db, args, opts.repeats)
    print(f"array {opts.m}x{opts.n}, batch {opts.size}, best of {opts.repeats}")
    print(f"  fallback: {t_ref * 1e3:9.1f} ms  ({opts.size / t_ref / 1e6:6.2f} M evals/s)")
    if _core is None:
        print("  compiled: not built (pip install -e . compiles it)")
        return
    t_c = _time(_core.composite_gain_db, args, opts.repeats)
    print(f"  compiled: {t_c * 1e3:9.1f} ms  ({opts.size / t_c / 1e6:6.2f} M evals/s)")
    print(f"  speedup:  {t_ref / t_c:.1f}x")
    out_ref = reference.composite_gain_db(*args)
    out_c = _core.composite_gain_db(*args)
    worst = float(np.max(np.abs(out_ref - out_c)))
    print(f"  max |diff|: {worst:.3e} dB")


if __name__ == "__main__":
    main()
