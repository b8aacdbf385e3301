"""Named invariant suites behind the ``verify`` CLI subcommand.

Each check is a zero-argument callable returning ``(tolerance, measured)``;
it passes when ``measured <= tolerance``.  The quick suite covers the
algebra, rotation identities, unitarity, revivals and Bessel identities in
a few seconds; the full suite adds the three-route Wigner agreement, the
large-spin Bessel limit and a large random eigensolver round-trip.
"""

import math
from typing import Callable, NamedTuple

import numpy as np

from . import dynamics, su2, unrestricted, wigner
from .detection import FilterSpec, spectral_scan
from .numkernel import hermitian_eigen

_OMEGA = 30.0
_T = 2.0 * math.pi / _OMEGA

# power-series value of J_1(2), frozen from the oracle in the test suite
_J1_OF_2 = 0.5767248077568734


class CheckResult(NamedTuple):
    name: str
    tolerance: float
    measured: float
    passed: bool


def _fig_params(gamma, S=3, detune=0.1):
    return su2.ModulatorParams.from_detuning(S=S, Omega=_OMEGA, detune=detune,
                                             gamma=gamma, T=_T)


def check_su2_algebra():
    worst = 0.0
    for S in (0.5, 1.0, 1.5, 2.0, 3.0, 5.0):
        g = su2.build_generators(S)
        eye = np.eye(g.A0.shape[0])
        worst = max(
            worst,
            np.max(np.abs(g.A0 @ g.Aplus - g.Aplus @ g.A0 - g.Aplus)),
            np.max(np.abs(g.A0 @ g.Aminus - g.Aminus @ g.A0 + g.Aminus)),
            np.max(np.abs(g.Aplus @ g.Aminus - g.Aminus @ g.Aplus - 2.0 * g.A0)),
            np.max(np.abs(g.A0 @ g.A0
                          + 0.5 * (g.Aplus @ g.Aminus + g.Aminus @ g.Aplus)
                          - S * (S + 1.0) * eye)),
            np.max(np.abs(g.F - 1j * (g.Aminus - g.Aplus))),
        )
    return 1e-12, float(worst)


def check_wigner_identities():
    worst = 0.0
    for S in (3.0, 3.5):
        dim = round(2 * S) + 1
        eye = np.eye(dim)
        d0 = wigner.wigner_d_exponential(S, 0.0).entries
        dpi = wigner.wigner_d_exponential(S, math.pi).entries
        expected_pi = np.zeros((dim, dim))
        for i in range(dim):
            expected_pi[i, dim - 1 - i] = -1.0 if i % 2 else 1.0
        worst = max(worst, np.max(np.abs(d0 - eye)),
                    np.max(np.abs(dpi - expected_pi)))
        for theta in (0.4, 1.3, 2.8):
            D = wigner.wigner_d_exponential(S, theta).entries
            worst = max(worst, np.max(np.abs(D @ D.T - eye)),
                        np.max(np.abs(np.sum(D * D, axis=1) - 1.0)))
    return 1e-12, float(worst)


def check_propagator_unitarity():
    worst = 0.0
    for gamma in (2.0, 10.0, 24.25):
        R = dynamics.propagator(_fig_params(gamma)).entries
        worst = max(worst, np.max(np.abs(R @ R.conj().T - np.eye(R.shape[0]))))
    return 1e-12, float(worst)


def check_exact_revival():
    worst = 0.0
    for S in (3, 5):
        for frac in (8.0, 4.0):
            p = _fig_params(_OMEGA * (2 * S + 1) / frac, S=S, detune=0.0)
            occ = dynamics.mode_occupations(p, 1.0)
            expected = np.zeros(2 * S + 1)
            expected[S] = 1.0
            worst = max(worst, np.max(np.abs(occ - expected)))
    return 1e-10, float(worst)


def check_closed_form_magnitude():
    rng = np.random.default_rng(2024)
    worst = 0.0
    done = 0
    while done < 20:
        S = float(rng.choice([0.5, 1.0, 2.0, 3.0, 5.0]))
        p = su2.ModulatorParams.from_detuning(
            S=S, Omega=_OMEGA, detune=rng.uniform(-1.0, 1.0),
            gamma=rng.uniform(0.0, 5.0), T=rng.uniform(0.0, 4.0))
        cf = dynamics.closed_form_angles(p)
        if not 0.0 <= cf.sin_product <= 1.0:
            continue
        done += 1
        R = dynamics.propagator(p).entries
        d = wigner.wigner_d_exponential(S, cf.two_beta_tilde).entries
        worst = max(worst, np.max(np.abs(np.abs(R) - np.abs(d))))
    return 1e-9, float(worst)


def check_quasi_energy_spacing():
    rng = np.random.default_rng(99)
    worst = 0.0
    for S in (3, 5):
        for _ in range(5):
            p = su2.ModulatorParams.from_detuning(
                S=S, Omega=_OMEGA, detune=rng.uniform(-2.0, 2.0),
                gamma=rng.uniform(0.05, 20.0), T=_T,
                m_tilde=float(rng.integers(0, 3)))
            gamma_rabi = su2.mixing_angle(p).Gamma
            vals = hermitian_eigen(su2.quasi_energy_matrix(p)).values
            ladder = p.omega * p.m_tilde + 2.0 * gamma_rabi * su2.mode_offsets(S)
            worst = max(worst, np.max(np.abs(vals - ladder)) / gamma_rabi)
    return 1e-10, float(worst)


def check_photon_conservation():
    worst = 0.0
    for gamma in (2.0, 10.0, 24.25):
        occ = dynamics.mode_occupations(_fig_params(gamma), 1.0)
        worst = max(worst, abs(float(occ.sum()) - 1.0))
    return 1e-12, float(worst)


def check_bessel_series_value():
    return 1e-12, abs(unrestricted.bessel_j(1, 2.0) - _J1_OF_2)


def check_bessel_recurrence():
    worst = 0.0
    for x in (0.1, 1.0, 5.0, 17.3, 50.0):
        seq = unrestricted.bessel_j_sequence(52, x)
        scale = np.max(np.abs(seq))
        for n in range(1, 51):
            resid = seq[n - 1] + seq[n + 1] - (2.0 * n / x) * seq[n]
            worst = max(worst, abs(resid) / scale)
    return 1e-10, float(worst)


def check_bessel_normalization():
    worst = 0.0
    for x in (0.5, 2.7, 10.0, 41.9):
        seq = unrestricted.bessel_j_sequence(int(math.ceil(x)) + 30, x)
        total = seq[0] ** 2 + 2.0 * float(np.sum(seq[1:] ** 2))
        worst = max(worst, abs(total - 1.0))
    return 1e-12, float(worst)


def check_bessel_parity():
    worst = 0.0
    for n in (1, 2, 7, 30):
        for x in (0.3, 4.2, 26.0):
            worst = max(worst, abs(unrestricted.bessel_j(-n, x)
                                   - (-1.0) ** n * unrestricted.bessel_j(n, x)))
    return 0.0, float(worst)


def check_classical_fourier():
    return 1e-10, max(unrestricted.classical_signal_check(1.5, 1024),
                      unrestricted.classical_signal_check(5.0, 4096))


def check_scan_bounds():
    grid = np.arange(-60.0, 60.001, 0.5)
    worst = 0.0
    for gamma in (2.0, 24.25):
        sc = spectral_scan(_fig_params(gamma), FilterSpec(half_width=4.0), grid)
        for curve in (sc.restricted, sc.unrestricted):
            worst = max(worst, float(np.max(curve - 1.0)), float(np.max(-curve)))
    return 0.0, worst


def check_wigner_three_route():
    rng = np.random.default_rng(7)
    thetas = rng.uniform(1e-6, math.pi - 1e-6, size=20)
    worst = 0.0
    for two_s in range(1, 21):
        S = two_s / 2.0
        for theta in thetas:
            de = wigner.wigner_d_exponential(S, theta).entries
            df = wigner.wigner_d_factorial(S, theta).entries
            dj = wigner.wigner_d_jacobi(S, theta).entries
            worst = max(worst, np.max(np.abs(de - df)), np.max(np.abs(de - dj)))
    return 1e-10, float(worst)


def check_wigner_orthogonality_s200():
    D = wigner.wigner_d_exponential(200, 1.234).entries
    return 1e-12, float(np.max(np.abs(D @ D.T - np.eye(401))))


def check_asymptotic_limit():
    worst = 0.0
    for gamma in (2.0, 10.0):
        p = _fig_params(gamma, S=200)
        table = unrestricted.asymptotic_compare(p, range(-5, 6))
        worst = max(worst, max(abs(r - b) for _, r, b in table))
    return 1e-2, float(worst)


def check_asymptotic_monotone():
    worst_ratio = 0.0
    for gamma in (2.0, 10.0):
        diffs = []
        for S in (50, 100, 200):
            table = unrestricted.asymptotic_compare(_fig_params(gamma, S=S),
                                                    range(-5, 6))
            diffs.append(max(abs(r - b) for _, r, b in table))
        for small, big in zip(diffs[1:], diffs[:-1]):
            worst_ratio = max(worst_ratio, small / big)
    return 1.1, float(worst_ratio)


def check_jacobi_bessel_limit():
    worst = 0.0
    for alpha, beta_param, z in ((0, 0.0, 2.0), (1, 0.0, 2.0), (2, 1.0, 3.0)):
        lhs, rhs = wigner.jacobi_bessel_limit_check(alpha, beta_param, z, 500)
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return 1e-2, float(worst)


def check_eigen_reconstruction():
    rng = np.random.default_rng(11)
    n = 301
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    A = (M + M.conj().T) / 2.0
    dec = hermitian_eigen(A)
    recon = (dec.vectors * dec.values) @ dec.vectors.conj().T
    return 1e-10, float(np.max(np.abs(recon - A)) / np.max(np.abs(dec.values)))


QUICK_CHECKS: dict[str, Callable] = {
    "su2-algebra": check_su2_algebra,
    "wigner-identities": check_wigner_identities,
    "propagator-unitarity": check_propagator_unitarity,
    "exact-revival": check_exact_revival,
    "closed-form-magnitude": check_closed_form_magnitude,
    "quasi-energy-spacing": check_quasi_energy_spacing,
    "photon-conservation": check_photon_conservation,
    "bessel-series-value": check_bessel_series_value,
    "bessel-recurrence": check_bessel_recurrence,
    "bessel-normalization": check_bessel_normalization,
    "bessel-parity": check_bessel_parity,
    "classical-fourier": check_classical_fourier,
    "scan-bounds": check_scan_bounds,
}

FULL_EXTRA_CHECKS: dict[str, Callable] = {
    "wigner-three-route": check_wigner_three_route,
    "wigner-orthogonality-s200": check_wigner_orthogonality_s200,
    "asymptotic-limit": check_asymptotic_limit,
    "asymptotic-monotone": check_asymptotic_monotone,
    "jacobi-bessel-limit": check_jacobi_bessel_limit,
    "eigen-reconstruction": check_eigen_reconstruction,
}


def registry(level: str) -> dict[str, Callable]:
    if level == "quick":
        return dict(QUICK_CHECKS)
    if level == "full":
        return {**QUICK_CHECKS, **FULL_EXTRA_CHECKS}
    raise ValueError(f"unknown verify level {level!r} (want quick or full)")


def run_checks(level: str, checks=None) -> list[CheckResult]:
    """Run the named suite (or an explicit registry) and collect results."""
    checks = registry(level) if checks is None else checks
    results = []
    for name, func in checks.items():
        tol, measured = func()
        results.append(CheckResult(name=name, tolerance=float(tol),
                                   measured=float(measured),
                                   passed=measured <= tol))
    return results


def format_report(results) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.name:<28s} measured={r.measured:.3e} "
                     f"tol={r.tolerance:.3e}")
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} invariants passed")
    return "\n".join(lines)
