#!/usr/bin/env python3
"""Benchmark the numba Jacobi-sweep kernel against the pure-numpy fallback.

The eigensolver is the only hot loop in the package; everything else is
small-matrix BLAS.  This times both sweep kernels on random Hermitian
matrices and on the tridiagonal spin generator that dominates the
large-spin limit checks, then prints the speedup.

Run `EOM_FORCE_NUMPY=1 eomod verify full` to exercise the whole package on
the fallback path.
"""

import time

import numpy as np

from eomod import kernels
from eomod.su2 import build_generators

SIZES = (51, 101, 201, 401)
REPEAT = 3


def run_case(label, matrix):
    n = matrix.shape[0]
    # warm the JIT once so compile time stays out of the numbers
    kernels.jacobi_eigh(matrix, sweeps=kernels._jacobi_sweeps_numba)

    times = {}
    for name, kern in (("numba", kernels._jacobi_sweeps_numba),
                       ("numpy", kernels._jacobi_sweeps_numpy)):
        best = np.inf
        for _ in range(REPEAT):
            t0 = time.perf_counter()
            w, v = kernels.jacobi_eigh(matrix, sweeps=kern)
            best = min(best, time.perf_counter() - t0)
        times[name] = best
        recon = (v * w) @ v.conj().T
        err = np.max(np.abs(recon - matrix)) / max(np.max(np.abs(w)), 1e-300)
        assert err < 1e-10, f"{name} kernel inaccurate at n={n}: {err:.2e}"

    print(f"{label:<28s} n={n:4d}  numba {times['numba']*1e3:9.2f} ms   "
          f"numpy {times['numpy']*1e3:9.2f} ms   "
          f"speedup {times['numpy']/times['numba']:6.2f}x")


def main():
    print(f"active backend for the package: {kernels.active_backend()}")
    rng = np.random.default_rng(12345)
    for n in SIZES:
        M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        run_case("dense random Hermitian", (M + M.conj().T) / 2.0)
    for n in SIZES:
        S = (n - 1) / 2.0
        run_case("tridiagonal 2*S_y (spin S)", build_generators(S).F)


if __name__ == "__main__":
    main()
