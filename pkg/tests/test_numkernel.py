import numpy as np
import pytest

from eomod.numkernel import HERM_TOL, RECON_TOL, expm_skew_hermitian, hermitian_eigen
from eomod.su2 import build_generators

from oracles import tridiag_eigenvalues_sturm


def random_hermitian(n, rng):
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (M + M.conj().T) / 2.0


def test_already_diagonal():
    dec = hermitian_eigen(np.diag([1.0, 2.0]))
    assert np.allclose(dec.values, [1.0, 2.0], atol=0)
    assert np.allclose(np.abs(dec.vectors), np.eye(2), atol=1e-15)


def test_pauli_x():
    dec = hermitian_eigen(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(dec.values, [-1.0, 1.0], atol=1e-15)


def test_spin_matrix_eigenvalues_s3():
    # 2 S_y for S=3 has the ladder spectrum 2k, k=-3..3
    F = build_generators(3).F
    dec = hermitian_eigen(F)
    assert np.allclose(dec.values, np.arange(-6, 7, 2), atol=1e-12)


def test_spin_matrix_vs_charpoly_oracle():
    from oracles import charpoly_eigenvalues

    F = build_generators(3).F
    dec = hermitian_eigen(F)
    assert np.max(np.abs(dec.values - charpoly_eigenvalues(F))) < 1e-8


def test_rejects_non_square():
    with pytest.raises(ValueError):
        hermitian_eigen(np.zeros((2, 3)))


def test_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


@pytest.mark.parametrize("n", [2, 7, 33, 128, 501])
def test_reconstruction_random(n):
    rng = np.random.default_rng(100 + n)
    A = random_hermitian(n, rng)
    dec = hermitian_eigen(A)
    recon = (dec.vectors * dec.values) @ dec.vectors.conj().T
    norm = np.max(np.abs(dec.values))
    assert np.max(np.abs(recon - A)) < RECON_TOL * norm
    assert np.max(np.abs(A @ dec.vectors - dec.vectors * dec.values)) < \
        RECON_TOL * norm
    assert np.all(np.diff(dec.values) >= 0.0)
    gram = dec.vectors.conj().T @ dec.vectors
    assert np.max(np.abs(gram - np.eye(n))) < 1e-12


@pytest.mark.parametrize("n", [3, 8, 15])
def test_tridiagonal_vs_sturm_oracle(n):
    rng = np.random.default_rng(n)
    diag = rng.standard_normal(n)
    off = rng.standard_normal(n - 1)
    A = np.diag(diag).astype(complex) + np.diag(off, 1) + np.diag(off, -1)
    dec = hermitian_eigen(A)
    oracle = tridiag_eigenvalues_sturm(diag, off)
    assert np.max(np.abs(dec.values - oracle)) < 1e-10


def test_expm_zero_is_identity():
    out = expm_skew_hermitian(np.zeros((4, 4)))
    assert np.array_equal(out, np.eye(4))


def test_expm_real_rotation():
    th = 0.37
    out = expm_skew_hermitian(np.array([[0.0, -th], [th, 0.0]]))
    expected = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    assert np.max(np.abs(out - expected)) < 1e-14


def test_expm_matches_d_pi_pattern():
    # exp(-i (pi/2) 2S_y) at S=3 is the anti-diagonal +-1 rotation by pi
    F = build_generators(3).F
    out = expm_skew_hermitian(-1j * (np.pi / 2.0) * F)
    expected = np.zeros((7, 7))
    for i in range(7):
        expected[i, 6 - i] = (-1.0) ** i
    assert np.max(np.abs(out - expected)) < 1e-12


@pytest.mark.parametrize("n", [2, 5, 24, 80])
def test_expm_unitarity(n):
    rng = np.random.default_rng(n)
    H = random_hermitian(n, rng)
    out = expm_skew_hermitian(-1j * H)
    assert np.max(np.abs(out @ out.conj().T - np.eye(n))) < 1e-12


def test_expm_rejects_non_skew():
    with pytest.raises(ValueError):
        expm_skew_hermitian(np.array([[1.0, 0.0], [0.0, 1.0]]))


def test_hermiticity_tolerance_boundary():
    A = np.array([[1.0, 0.5], [0.5 + 5 * HERM_TOL, 1.0]], dtype=complex)
    with pytest.raises(ValueError):
        hermitian_eigen(A)
