#!/usr/bin/env python3
"""Compare the numba and numpy kernel backends: raw node batches and one full
local-term quadrature.  Run from the repo root:

    python bench/benchmark_backends.py [--n 200000]
"""

import argparse
import time

import numpy as np

from udwharvest import _kernels_numba, _kernels_numpy
from udwharvest._backend import get_backend
from udwharvest.detector_matrix import L_element
from udwharvest.validation import fig1_scenario
from udwharvest.wightman import VacuumKind

KIND_NAMES = {0: "rational (Boulware/Minkowski)", 1: "mixed (Unruh)",
              2: "thermal (HHI/bath)", 3: "collapse (Vaidya)"}


def bench_kernels(n: int) -> None:
    rng = np.random.default_rng(0)
    tau_i = rng.uniform(6, 20, n) + 1j * rng.uniform(0, 1, n)
    tau_j = rng.uniform(6, 20, n) + 1j * rng.uniform(0.05, 1, n)
    args = (0.5, 0.4, -2.0, 0.8, 2.5)

    print(f"kernel batches, n = {n}")
    print(f"{'kind':36s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for kind in (0, 1, 2, 3):
        for mod in (_kernels_numba, _kernels_numpy):  # warm caches / JIT
            mod.kernel_vals(kind, *args, tau_i[:64], tau_j[:64], False)
        times = {}
        for name, mod in (("numba", _kernels_numba), ("numpy", _kernels_numpy)):
            t0 = time.perf_counter()
            for _ in range(3):
                vals, bad = mod.kernel_vals(kind, *args, tau_i, tau_j, False)
            times[name] = (time.perf_counter() - t0) / 3
        print(f"{KIND_NAMES[kind]:36s} {times['numba']*1e3:8.2f}ms {times['numpy']*1e3:8.2f}ms "
              f"{times['numpy']/times['numba']:7.1f}x")


def bench_integral() -> None:
    print("\nfull local-term quadrature (collapse vacuum, near-horizon point)")
    for name in ("numba", "numpy"):
        get_backend(force=None)  # reset not needed; evaluator picks at call time
        import udwharvest._backend as backend_mod
        backend_mod._BACKEND = None
        backend_mod._NAME = None
        import os
        os.environ["UDWHARVEST_BACKEND"] = name
        s = fig1_scenario(VacuumKind.VAIDYA, 0.5)
        t0 = time.perf_counter()
        res = L_element(s, "A", "A")
        dt = time.perf_counter() - t0
        print(f"  {name:6s}: {dt*1e3:8.1f} ms  (L_AA = {res.value.real:.10g}, "
              f"{res.neval} kernel evaluations)")
    import os
    os.environ.pop("UDWHARVEST_BACKEND", None)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=200_000)
    args = ap.parse_args()
    bench_kernels(args.n)
    bench_integral()
