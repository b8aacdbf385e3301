"""Single-photon propagator of the restricted model and derived quantities.

The propagator over one interaction window T follows from the quasi-energy
spectral sum

    R = d(2 beta) diag(exp(-i dk 2 Gamma T)) d(2 beta)^T,

which equals exp(-i Q T) for the single-photon quasi-energy matrix Q.  The
mode-dependent phase prefactor of the lab frame is kept separate from R:
every counting observable uses |R|^2 only, and solely the mean-field
envelope re-attaches it.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .su2 import ModulatorParams, mixing_angle, mode_offsets
from .wigner import wigner_d_exponential


@dataclass(frozen=True)
class PropagatorMatrix:
    """Unitary R(T) on mode amplitudes plus the detached lab-frame phases.

    ``entries[i, j]`` is R_{dm_i, dp_j} with offsets ascending; multiplying
    row i by ``mode_phases[i] = exp(-i((m_tilde+dm_i)*OmegaMW + omega*m_tilde)T)``
    recovers the full Heisenberg amplitude map.
    """

    params: ModulatorParams
    entries: np.ndarray
    mode_phases: np.ndarray


class ClosedFormAngles(NamedTuple):
    two_beta_tilde: float
    sin_product: float


def _central_index(p: ModulatorParams) -> int:
    two_s = round(2 * float(p.S))
    if two_s % 2:
        raise ValueError(
            f"S={p.S} has no central mode (dm=0); integer S required"
        )
    return two_s // 2


def propagator(p: ModulatorParams) -> PropagatorMatrix:
    """R(T) by the spectral sum over quasi-energy eigenphases."""
    ang = mixing_angle(p)
    D = wigner_d_exponential(p.S, ang.two_beta).entries
    offs = mode_offsets(p.S)
    eigenphases = np.exp(-2j * ang.Gamma * p.T * offs)
    R = (D * eigenphases) @ D.T
    lab = np.exp(-1j * ((p.m_tilde + offs) * p.OmegaMW
                        + p.omega * p.m_tilde) * p.T)
    return PropagatorMatrix(params=p, entries=R, mode_phases=lab)


def closed_form_angles(p: ModulatorParams) -> ClosedFormAngles:
    """The composed rotation angle 2*beta_tilde controlling |R|.

    sin(2 beta_tilde) = 2 u sqrt(1 - u^2) with u = sin(2 beta) sin(Gamma T),
    i.e. 2 beta_tilde = 2 arcsin(u); for u in [0, 1] the angle lies in
    [0, pi] and |R_{dm,dp}| = |d^S_{dm,dp}(2 beta_tilde)| entrywise.
    """
    ang = mixing_angle(p)
    u = (ang.g_eff / ang.Gamma) * math.sin(ang.Gamma * p.T)
    u = min(1.0, max(-1.0, u))
    return ClosedFormAngles(two_beta_tilde=2.0 * math.asin(u), sin_product=u)


def mode_occupations(p: ModulatorParams, n0) -> np.ndarray:
    """Mean photon numbers n0 |R_{dm,0}|^2 for a centrally excited input."""
    n0 = float(n0)
    if not (n0 >= 0.0 and math.isfinite(n0)):
        raise ValueError(f"input photon number must be >= 0, got {n0}")
    center = _central_index(p)
    col = propagator(p).entries[:, center]
    return n0 * np.abs(col) ** 2


def mean_field_envelope(p: ModulatorParams) -> complex:
    """Normalized mean-field amplitude sum_dm exp(-i dm OmegaMW T) R_{dm,0}.

    Includes the detached mode phases; the global carrier phase
    exp(-i omega_opt T) is stripped.  For S -> infinity this approaches the
    classical pure phase modulation exp(-i mu cos((OmegaMW - omega/2) T)).
    """
    center = _central_index(p)
    prop = propagator(p)
    global_phase = np.exp(1j * p.omega_opt * p.T)
    return complex(global_phase * np.sum(prop.mode_phases
                                         * prop.entries[:, center]))


def central_mode_probability(p: ModulatorParams, dm=0) -> float:
    """|R_{dm,0}|^2: probability to reach offset dm from the central mode."""
    center = _central_index(p)
    dm = int(dm)
    if abs(dm) > p.S:
        raise ValueError(f"offset dm={dm} outside -S..S for S={p.S}")
    R = propagator(p).entries
    return float(np.abs(R[center + dm, center]) ** 2)


def revival_scan(p_base: ModulatorParams, gamma_grid):
    """Central-mode return probability |R_00|^2 over a grid of couplings.

    Grid points are independent (safe to parallelize externally); results
    come back in input-grid order.
    """
    grid = [float(g) for g in gamma_grid]
    if not grid:
        raise ValueError("gamma grid must be non-empty")
    return [(g, central_mode_probability(p_base.with_gamma(g))) for g in grid]


def find_revival_peak(scan):
    """Parabolic refinement of the highest grid point of a revival scan.

    ``scan`` is the (gamma, probability) list from :func:`revival_scan`;
    returns the refined (gamma_peak, probability_peak).
    """
    gammas = np.array([g for g, _ in scan])
    probs = np.array([v for _, v in scan])
    i = int(np.argmax(probs))
    if i == 0 or i == len(probs) - 1:
        return float(gammas[i]), float(probs[i])
    y0, y1, y2 = probs[i - 1], probs[i], probs[i + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom == 0.0:
        return float(gammas[i]), float(probs[i])
    shift = 0.5 * (y0 - y2) / denom
    step = gammas[i + 1] - gammas[i]
    peak_gamma = gammas[i] + shift * step
    peak_val = y1 - 0.25 * (y0 - y2) * shift
    return float(peak_gamma), float(peak_val)
