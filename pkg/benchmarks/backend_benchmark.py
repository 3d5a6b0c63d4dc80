#!/usr/bin/env python3
"""Timing comparison of the compiled and pure-Python kernel backends.

Primitives are timed in-process against both kernel modules; the
end-to-end measure is timed in subprocesses so each run gets the backend
selected at import.  Run from the repository root:

    python3 benchmarks/backend_benchmark.py
"""

import os
import subprocess
import sys
import time

import numpy as np

from mubcorr.kernels import pure
from mubcorr.kernels import _fast as fast
from mubcorr.mub import fourier_basis
from mubcorr.states import BlochTriple, bell_diagonal, random_density_matrix


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_primitives():
    rows = []
    for d in (2, 3, 5):
        rho = random_density_matrix(d, d, d * d, seed=0)
        rho4 = np.ascontiguousarray(rho.blocks())
        rng = np.random.default_rng(1)
        theta = rng.uniform(-np.pi, np.pi, d * d)
        cols = np.ascontiguousarray(pure.unitary_from_params(theta, d))

        def chi(backend):
            return lambda: backend.holevo_chi(rho4, cols)

        def ufp(backend):
            return lambda: backend.unitary_from_params(theta, d)

        for name, maker in (("holevo_chi", chi), ("unitary_from_params", ufp)):
            t_py = _time(maker(pure), 200)
            t_cy = _time(maker(fast), 200)
            rows.append((f"{name} d={d}", t_py, t_cy))

    rho = bell_diagonal(BlochTriple(0.5, 0.3, 0.1))
    rho4 = np.ascontiguousarray(rho.blocks())
    f0 = np.ascontiguousarray(fourier_basis(2).columns)
    empty = np.zeros((0, 0), dtype=complex)
    nobases = np.empty((0, 2, 2), dtype=complex)
    x0 = np.random.default_rng(2).uniform(-np.pi, np.pi, 5)

    def mini(backend):
        return lambda: backend.minimize(
            backend.KIND_PAIR, rho4, nobases, empty, f0, x0, 8000, 1e-7, 1e-9
        )

    rows.append(("minimize pair d=2", _time(mini(pure), 5), _time(mini(fast), 5)))
    return rows


def bench_full_measure():
    code = (
        "import time\n"
        "from mubcorr.states import werner_state\n"
        "from mubcorr.measures import mub_pair_correlation, OptimizerConfig\n"
        "import mubcorr.kernels as k\n"
        "rho = werner_state(3, 0.7)\n"
        "cfg = OptimizerConfig(seed=0)\n"
        "mub_pair_correlation(rho, cfg=cfg)\n"
        "t0 = time.perf_counter()\n"
        "res = mub_pair_correlation(rho, cfg=cfg)\n"
        "print(f'{time.perf_counter() - t0:.6f} {res.value:.9f} {k.BACKEND_NAME}')\n"
    )
    out = {}
    for backend in ("python", "cython"):
        env = dict(os.environ, MUBCORR_BACKEND=backend)
        run = subprocess.run(
            [sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True
        )
        seconds, value, name = run.stdout.split()
        assert name == backend
        out[backend] = (float(seconds), float(value))
    return out


def main():
    print(f"{'kernel':28s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, t_py, t_cy in bench_primitives():
        print(f"{name:28s} {t_py * 1e6:8.1f}us {t_cy * 1e6:8.1f}us {t_py / t_cy:7.1f}x")
    full = bench_full_measure()
    t_py, v_py = full["python"]
    t_cy, v_cy = full["cython"]
    print(f"{'pair measure werner d=3':28s} {t_py:9.3f}s {t_cy:9.3f}s {t_py / t_cy:7.1f}x")
    print(f"values agree to {abs(v_py - v_cy):.2e}")


if __name__ == "__main__":
    main()
