"""Benchmark the phasor-sum kernels: numba against the pure-numpy fallback.

Times the intensity-series kernel on a fig2-sized workload (1600 modes,
10^4 sample times) and a window-sized one (351 modes, 10^3 times at huge
t). If numba is unavailable, or TPSPECKLE_NO_NUMBA=1 is set, only the
numpy path is measured.

Run:

    python benchmarks/bench_kernels.py
"""

import statistics
import time

import numpy as np

from tpspeckle import kernels


def make_workload(n_modes, n_times, t_start, step, seed=0):
    rng = np.random.default_rng(seed)
    vecs = rng.normal(size=(n_modes, 2))
    vecs /= np.linalg.norm(vecs, axis=0)
    coeffs = vecs[:, 0] * vecs[:, 1]
    energies = np.sort(rng.uniform(-2.0, 2.0, n_modes))
    times = t_start + step * np.arange(n_times)
    return coeffs, energies, times


def time_fn(fn, args, repeats=5):
    durations = []
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        durations.append(time.perf_counter() - t0)
    return {
        "mean": statistics.mean(durations),
        "std": statistics.pstdev(durations),
        "best": min(durations),
        "result": result,
    }


def main():
    workloads = [
        ("fig2-like (1600 modes x 10k times)", make_workload(1600, 10_000, 100.0, 100.0)),
        ("window-like (351 modes x 1k times)", make_workload(351, 1_000, 1.0e9, 100.0, seed=1)),
    ]
    numba_ready = kernels.HAVE_NUMBA
    if numba_ready:
        # one unmeasured call per signature to absorb JIT compilation
        warm = make_workload(8, 8, 0.0, 100.0)
        kernels.intensity_series(*warm)
        print(f"[info] numba backend active ({kernels.active_backend()}); warmed up")
    else:
        print("[info] numba not active; measuring the numpy path only")

    header = f"{'workload':38s} {'backend':8s} {'mean(s)':>9s} {'std(s)':>8s} {'best(s)':>9s}"
    print(header)
    print("-" * len(header))
    for name, args in workloads:
        res_np = time_fn(kernels.intensity_series_numpy, args)
        print(f"{name:38s} {'numpy':8s} {res_np['mean']:9.4f} {res_np['std']:8.4f} {res_np['best']:9.4f}")
        if numba_ready:
            res_nb = time_fn(kernels.intensity_series, args)
            print(f"{name:38s} {'numba':8s} {res_nb['mean']:9.4f} {res_nb['std']:8.4f} {res_nb['best']:9.4f}")
            drift = np.abs(res_nb["result"] - res_np["result"]).max()
            print(f"{'':38s} speedup {res_np['best'] / res_nb['best']:5.2f}x   max |diff| = {drift:.2e}")
    print("done")


if __name__ == "__main__":
    main()
