"""Equivalence and selection tests for the numba/numpy kernel backends."""

import os
import subprocess
import sys

import numpy as np
import pytest

from eomod import kernels


needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA,
                                 reason="numba not installed")


def random_hermitian(n, rng):
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (M + M.conj().T) / 2.0


@needs_numba
@pytest.mark.parametrize("n", [2, 9, 40, 64])
def test_backends_agree(n):
    rng = np.random.default_rng(n)
    A = random_hermitian(n, rng)
    w_np, v_np = kernels.jacobi_eigh(A, sweeps=kernels._jacobi_sweeps_numpy)
    w_nb, v_nb = kernels.jacobi_eigh(A, sweeps=kernels._jacobi_sweeps_numba)
    scale = np.max(np.abs(w_np))
    assert np.max(np.abs(w_np - w_nb)) < 1e-12 * scale
    for w, v in ((w_np, v_np), (w_nb, v_nb)):
        recon = (v * w) @ v.conj().T
        assert np.max(np.abs(recon - A)) < 1e-12 * scale


def test_numpy_backend_standalone():
    rng = np.random.default_rng(0)
    A = random_hermitian(17, rng)
    w, v = kernels.jacobi_eigh(A, sweeps=kernels._jacobi_sweeps_numpy)
    recon = (v * w) @ v.conj().T
    assert np.max(np.abs(recon - A)) < 1e-13 * np.max(np.abs(w))
    assert np.all(np.diff(w) >= 0)


@needs_numba
def test_default_backend_is_numba_here():
    if not kernels.FORCE_NUMPY:
        assert kernels.active_backend() == "numba"


def test_env_flag_selects_numpy_fallback():
    env = dict(os.environ, EOM_FORCE_NUMPY="1")
    out = subprocess.run(
        [sys.executable, "-c",
         "from eomod.kernels import active_backend; print(active_backend())"],
        capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "numpy"


@needs_numba
def test_env_flag_off_keeps_numba():
    env = {k: v for k, v in os.environ.items() if k != "EOM_FORCE_NUMPY"}
    out = subprocess.run(
        [sys.executable, "-c",
         "from eomod.kernels import active_backend; print(active_backend())"],
        capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "numba"


def test_non_convergence_guard():
    A = random_hermitian(6, np.random.default_rng(1))
    with pytest.raises(RuntimeError):
        kernels.jacobi_eigh(A, max_sweeps=0)
