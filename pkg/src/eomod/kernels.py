"""Cyclic-Jacobi eigensolver kernels for dense complex Hermitian matrices.

This is the one hot loop in the package: every Wigner rotation matrix,
propagator and quasi-energy spectrum ultimately goes through a Hermitian
eigendecomposition, and the large-spin limit checks push the dimension to
401+. The same sweep algorithm is provided twice:

* ``_jacobi_sweeps_numba`` -- scalar loops compiled with ``numba.njit``
  (the default whenever numba imports),
* ``_jacobi_sweeps_numpy`` -- vectorized row/column updates in pure numpy.

Set ``EOM_FORCE_NUMPY=1`` in the environment to force the numpy path, e.g.
to run the benchmark comparison or on hosts without a working numba.  Both
paths execute the identical rotation sequence and agree to rounding error;
``benchmarks/bench_kernels.py`` times one against the other.

A rotation annihilating the pivot ``A[p, q] = |g| e^{i phi}`` uses the
unitary with diagonal ``c`` and off-diagonal ``+/- s e^{+/- i phi}``, where
``t = s/c`` is the stable small root of ``t^2 + 2 tau t - 1 = 0`` and
``tau = (A[q,q] - A[p,p]) / (2 |g|)``.  Sweeps run cyclically by rows until
the off-diagonal Frobenius mass falls below ``tol`` times the matrix norm.
"""

import math
import os

import numpy as np

SWEEP_TOL = 1e-14
MAX_SWEEPS = 60

FORCE_NUMPY = os.environ.get("EOM_FORCE_NUMPY", "").strip().lower() in {
    "1", "true", "yes", "on"
}

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(func):
            return func

        if len(args) == 1 and callable(args[0]):
            return args[0]
        return wrap


def _rotation_params(app, aqq, absg):
    """Stable (c, s, t) for the 2x2 pivot; |t| <= 1 keeps sweeps contractive."""
    tau = (aqq - app) / (2.0 * absg)
    if tau >= 0.0:
        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
    else:
        t = 1.0 / (tau - math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    return c, t * c, t


def _jacobi_sweeps_numpy(A, V, tol, max_sweeps):
    """Run cyclic Jacobi sweeps in place; return sweep count or -1."""
    n = A.shape[0]
    upper = np.triu_indices(n, 1)
    diag_idx = np.arange(n)
    for sweep in range(max_sweeps):
        # summing the strict triangle directly avoids the cancellation that
        # total^2 - diag^2 would hit once the off mass falls below eps*fro^2
        off2 = 2.0 * float(np.sum(np.abs(A[upper]) ** 2))
        fro2 = off2 + float(np.sum(np.abs(A[diag_idx, diag_idx]) ** 2))
        if fro2 == 0.0 or off2 <= (tol * tol) * fro2:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = A[p, q]
                absg = abs(g)
                if absg == 0.0:
                    continue
                c, s, t = _rotation_params(A[p, p].real, A[q, q].real, absg)
                e = g / absg
                se = s * e
                sec = s * np.conj(e)
                colp = A[:, p].copy()
                colq = A[:, q].copy()
                A[:, p] = c * colp - sec * colq
                A[:, q] = se * colp + c * colq
                rowp = A[p, :].copy()
                rowq = A[q, :].copy()
                A[p, :] = c * rowp - se * rowq
                A[q, :] = sec * rowp + c * rowq
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                A[p, q] = 0.0
                A[q, p] = 0.0
                vp = V[:, p].copy()
                V[:, p] = c * vp - sec * V[:, q]
                V[:, q] = se * vp + c * V[:, q]
    return -1


@njit(cache=True)
def _jacobi_sweeps_numba(A, V, tol, max_sweeps):  # pragma: no cover - compiled
    n = A.shape[0]
    for sweep in range(max_sweeps):
        off2 = 0.0
        dia2 = 0.0
        for i in range(n):
            dia2 += abs(A[i, i]) ** 2
            for j in range(i + 1, n):
                off2 += 2.0 * abs(A[i, j]) ** 2
        fro2 = off2 + dia2
        if fro2 == 0.0 or off2 <= (tol * tol) * fro2:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = A[p, q]
                absg = abs(g)
                if absg == 0.0:
                    continue
                app = A[p, p].real
                aqq = A[q, q].real
                tau = (aqq - app) / (2.0 * absg)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (tau - math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                e = g / absg
                se = s * e
                sec = s * np.conj(e)
                for i in range(n):
                    if i == p or i == q:
                        continue
                    aip = A[i, p]
                    aiq = A[i, q]
                    A[i, p] = c * aip - sec * aiq
                    A[i, q] = se * aip + c * aiq
                    A[p, i] = np.conj(A[i, p])
                    A[q, i] = np.conj(A[i, q])
                A[p, p] = app - t * absg
                A[q, q] = aqq + t * absg
                A[p, q] = 0.0
                A[q, p] = 0.0
                for i in range(n):
                    vip = V[i, p]
                    viq = V[i, q]
                    V[i, p] = c * vip - sec * viq
                    V[i, q] = se * vip + c * viq
    return -1


if HAVE_NUMBA and not FORCE_NUMPY:
    _ACTIVE = "numba"
    _sweeps = _jacobi_sweeps_numba
else:
    _ACTIVE = "numpy"
    _sweeps = _jacobi_sweeps_numpy


def active_backend():
    """Name of the kernel backend selected at import time."""
    return _ACTIVE


def jacobi_eigh(A, tol=SWEEP_TOL, max_sweeps=MAX_SWEEPS, sweeps=None):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    A : (n, n) complex ndarray
        Hermitian input; not modified.  Hermiticity is the caller's
        responsibility (checked in :mod:`eomod.numkernel`).
    tol, max_sweeps : float, int
        Convergence threshold on the relative off-diagonal Frobenius mass
        and the sweep cap.
    sweeps : callable, optional
        Alternate sweep kernel, used by tests and the benchmark to pin a
        specific backend.

    Returns
    -------
    w : (n,) float ndarray, ascending eigenvalues
    V : (n, n) complex ndarray, orthonormal eigenvectors as columns
    """
    work = np.array(A, dtype=np.complex128, order="C", copy=True)
    n = work.shape[0]
    vecs = np.eye(n, dtype=np.complex128)
    kernel = _sweeps if sweeps is None else sweeps
    done = kernel(work, vecs, float(tol), int(max_sweeps))
    if done < 0:
        raise RuntimeError(
            f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
            f"(n={n})"
        )
    w = np.real(np.diag(work)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], vecs[:, order]
