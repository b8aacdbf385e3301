"""Wigner d-matrices by three independent routes, plus Jacobi polynomials.

The rotation matrix d^S(theta) = exp(-i theta S_y) realizes both the
quasi-energy diagonalization and (at the composed angle) the propagator
magnitudes, so getting it right matters more than getting it fast.  The
three constructions cross-check each other:

* ``wigner_d_exponential`` -- matrix exponential of the tridiagonal
  generator F = 2 S_y (the defining route; works for any S),
* ``wigner_d_factorial`` -- the classical explicit factorial sum
  (log-gamma based, guarded to S <= 25),
* ``wigner_d_jacobi`` -- entrywise Jacobi-polynomial formula.

Index convention everywhere: rows and columns ordered dm = -S..S ascending.
In this convention d^{1/2}(theta) = [[cos(theta/2), sin(theta/2)],
[-sin(theta/2), cos(theta/2)]], and d(pi) is the anti-diagonal matrix with
entries (-1)^(S+dm), which is the calibration identity.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .numkernel import hermitian_eigen
from .su2 import _check_spin, build_generators, mode_offsets
from .unrestricted import bessel_j

IMAG_TOL = 1e-12
FACTORIAL_S_MAX = 25


class CapabilityError(RuntimeError):
    """Requested route cannot handle the input size."""


@dataclass(frozen=True)
class WignerMatrix:
    S: float
    theta: float
    entries: np.ndarray
    method: str

    def __array__(self, dtype=None, copy=None):
        return np.array(self.entries, dtype=dtype)


def jacobi_poly(n, a, b, x) -> float:
    """Jacobi polynomial P_n^{(a,b)}(x) by the ascending three-term recurrence.

    Exact at n = 0, 1; defined for all real x.  The recurrence degenerates
    only at the corner a = b = -1 (for n >= 2), which is rejected.
    """
    n = int(n)
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    if n == 0:
        return 1.0
    p_prev = 1.0
    p_cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    for k in range(2, n + 1):
        c1 = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0)
        if c1 == 0.0:
            raise ValueError(
                f"three-term recurrence degenerates at n={k} for a={a}, b={b}"
            )
        c2 = (2.0 * k + a + b - 1.0) * (
            (2.0 * k + a + b) * (2.0 * k + a + b - 2.0) * x + a * a - b * b
        )
        c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b)
        p_prev, p_cur = p_cur, (c2 * p_cur - c3 * p_prev) / c1
    return p_cur


@lru_cache(maxsize=64)
def _sy_eigensystem(two_s):
    """Cached eigensystem of F = 2 S_y; shared by every angle at this spin."""
    dec = hermitian_eigen(build_generators(two_s / 2.0).F)
    dec.values.setflags(write=False)
    dec.vectors.setflags(write=False)
    return dec


def _realify(D, context):
    worst = np.max(np.abs(D.imag))
    if worst > IMAG_TOL * max(1.0, np.max(np.abs(D.real))):
        raise RuntimeError(f"{context}: residual imaginary part {worst:.3e}")
    return np.ascontiguousarray(D.real)


def wigner_d_exponential(S, theta) -> WignerMatrix:
    """d^S(theta) = exp(-i (theta/2) F) through the spectral calculus of F.

    Equivalent to ``expm_skew_hermitian(-1j*(theta/2)*F)``; the eigensystem
    of F is cached per spin so angle scans cost one decomposition total.
    """
    two_s = _check_spin(S)
    w, V = _sy_eigensystem(two_s)
    D = (V * np.exp(-0.5j * theta * w)) @ V.conj().T
    return WignerMatrix(S=two_s / 2.0, theta=float(theta),
                        entries=_realify(D, "wigner_d_exponential"),
                        method="exponential")


@lru_cache(maxsize=8)
def _log_factorials(n):
    return tuple(math.lgamma(k + 1) for k in range(n + 1))


def wigner_d_factorial(S, theta) -> WignerMatrix:
    """d^S(theta) from the explicit factorial sum (independent oracle route).

    Factorials enter as log-gamma values recombined in the exponent, which
    is safe up to S = 25; larger spins raise ``CapabilityError`` and should
    use the exponential route.
    """
    two_s = _check_spin(S)
    if two_s > 2 * FACTORIAL_S_MAX:
        raise CapabilityError(
            f"factorial-sum route supports S <= {FACTORIAL_S_MAX}; "
            f"use wigner_d_exponential for S = {two_s / 2.0}"
        )
    dim = two_s + 1
    lf = _log_factorials(2 * two_s + 1)
    ch = math.cos(0.5 * theta)
    sh = math.sin(0.5 * theta)
    D = np.empty((dim, dim))
    for i in range(dim):          # row: dm = i - S
        for j in range(dim):      # col: dk = j - S
            # integer shorthands: j+m' = i, j-m' = two_s-i, j+m = j, j-m = two_s-j
            pref = 0.5 * (lf[i] + lf[two_s - i] + lf[j] + lf[two_s - j])
            k_lo = max(0, j - i)
            k_hi = min(j, two_s - i)
            acc = 0.0
            for k in range(k_lo, k_hi + 1):
                den = lf[j - k] + lf[k] + lf[two_s - i - k] + lf[i - j + k]
                sign = -1.0 if (i - j + k) % 2 else 1.0
                acc += (sign * math.exp(pref - den)
                        * ch ** (two_s + j - i - 2 * k)
                        * sh ** (i - j + 2 * k))
            D[i, j] = acc
    return WignerMatrix(S=two_s / 2.0, theta=float(theta), entries=D,
                        method="factorial-sum")


def _d_pi(two_s) -> np.ndarray:
    """The exact d(pi): anti-diagonal with signs (-1)^(S+dm) = (-1)^row."""
    dim = two_s + 1
    D = np.zeros((dim, dim))
    for i in range(dim):
        D[i, dim - 1 - i] = -1.0 if i % 2 else 1.0
    return D


def _d_jacobi_principal(two_s, theta):
    """Entrywise Jacobi-polynomial evaluation of d^S for theta in [0, pi]."""
    dim = two_s + 1
    lf = _log_factorials(2 * two_s + 1)
    sb = math.sin(0.5 * theta)
    cb = math.cos(0.5 * theta)
    x = math.cos(theta)
    offs = mode_offsets(two_s / 2.0)
    D = np.empty((dim, dim))
    for i in range(dim):
        dm = offs[i]
        for j in range(dim):
            dk = offs[j]
            mu = abs(round(dm - dk))
            nu = abs(round(dm + dk))
            s = (two_s - mu - nu) // 2
            pref = math.exp(0.5 * (lf[s] + lf[s + mu + nu]
                                   - lf[s + mu] - lf[s + nu]))
            # sign sector: the magnitude formula needs (-1)^(dm-dk) above the
            # anti-transpose split dm > dk, +1 otherwise (calibrated against
            # the exponential route / d(pi) identity)
            xi = -1.0 if (dm > dk and round(dm - dk) % 2) else 1.0
            D[i, j] = (xi * pref * sb ** mu * cb ** nu
                       * jacobi_poly(s, mu, nu, x))
    return D


def wigner_d_jacobi(S, theta) -> WignerMatrix:
    """d^S(theta) from the Jacobi-polynomial form of the matrix elements.

    The closed formula covers theta in [0, pi]; other angles reduce through
    the group identities d(theta + 2 pi) = (-1)^(2S) d(theta) and
    d(theta) = d(pi) d(theta - pi).
    """
    two_s = _check_spin(S)
    t = math.fmod(float(theta), 4.0 * math.pi)
    if t < 0.0:
        t += 4.0 * math.pi
    sign = 1.0
    if t >= 2.0 * math.pi:
        t -= 2.0 * math.pi
        if two_s % 2:
            sign = -1.0
    if t <= math.pi:
        D = sign * _d_jacobi_principal(two_s, t)
    else:
        D = sign * (_d_pi(two_s) @ _d_jacobi_principal(two_s, t - math.pi))
    return WignerMatrix(S=two_s / 2.0, theta=float(theta), entries=D,
                        method="jacobi")


def jacobi_bessel_limit_check(alpha, beta_param, z, n):
    """Evaluate both sides of the large-degree Jacobi -> Bessel limit.

    Returns ``(n^-alpha P_n^(alpha,beta)(cos(z/n)), (z/2)^-alpha J_alpha(z))``;
    the caller asserts how close they are.
    """
    alpha = int(alpha)
    n = int(n)
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    if not z > 0.0:
        raise ValueError(f"z must be positive, got {z}")
    lhs = float(n) ** (-alpha) * jacobi_poly(n, float(alpha), float(beta_param),
                                             math.cos(z / n))
    rhs = (0.5 * z) ** (-alpha) * bessel_j(alpha, z)
    return lhs, rhs
