"""Finite-mode modulator model: parameters, su(2) generators, mixing angle.

The restricted model couples 2S+1 optical modes labelled by the offset
``dm = -S..S`` from the carrier.  In the single-photon sector the ladder
operators become the defining spin-S matrices, so everything downstream is
small dense linear algebra.
"""

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np


def _check_spin(S):
    two_s = 2.0 * float(S)
    if not math.isfinite(two_s) or abs(two_s - round(two_s)) > 1e-9 or round(two_s) < 1:
        raise ValueError(f"S must be a half-integer with 2S+1 >= 2, got {S}")
    return round(two_s)


def mode_offsets(S) -> np.ndarray:
    """The ladder of mode offsets -S, -S+1, ..., S (ascending)."""
    two_s = _check_spin(S)
    return np.arange(two_s + 1) - two_s / 2.0


@dataclass(frozen=True)
class ModulatorParams:
    """Physical parameter record of one modulator run.

    S : half-integer, 2S+1 interacting modes
    Omega : optical mode spacing (angular frequency)
    OmegaMW : microwave drive frequency (angular frequency)
    gamma : effective mode-coupling strength (angular frequency)
    T : interaction time
    m_tilde : central mode index (display only; defaults to 0)
    phi : microwave phase, fixed to 0 by the model
    """

    S: float
    Omega: float
    OmegaMW: float
    gamma: float
    T: float
    m_tilde: float = 0.0
    phi: float = field(default=0.0)

    def __post_init__(self):
        _check_spin(self.S)
        if not (self.Omega > 0.0 and math.isfinite(self.Omega)):
            raise ValueError(f"Omega must be positive and finite, got {self.Omega}")
        if not (self.gamma >= 0.0 and math.isfinite(self.gamma)):
            raise ValueError(f"gamma must be non-negative, got {self.gamma}")
        if not (self.T >= 0.0 and math.isfinite(self.T)):
            raise ValueError(f"T must be non-negative, got {self.T}")
        if not math.isfinite(self.OmegaMW):
            raise ValueError(f"OmegaMW must be finite, got {self.OmegaMW}")
        if not (math.isfinite(self.m_tilde) and self.m_tilde >= 0.0):
            raise ValueError(f"m_tilde must be a non-negative index, got {self.m_tilde}")
        if self.phi != 0.0:
            raise ValueError("phi != 0 is not supported by this model")

    @classmethod
    def from_detuning(cls, S, Omega, detune, gamma, T, m_tilde=0.0):
        """Build params from the detuning omega = Omega - OmegaMW."""
        return cls(S=S, Omega=Omega, OmegaMW=Omega - detune, gamma=gamma,
                   T=T, m_tilde=m_tilde)

    @property
    def omega(self) -> float:
        """Detuning of mode spacing against the microwave drive."""
        return self.Omega - self.OmegaMW

    @property
    def n_modes(self) -> int:
        return _check_spin(self.S) + 1

    @property
    def omega_opt(self) -> float:
        """Carrier frequency m_tilde * Omega."""
        return self.m_tilde * self.Omega

    def with_gamma(self, gamma: float) -> "ModulatorParams":
        return replace(self, gamma=gamma)


@dataclass(frozen=True)
class GeneratorSet:
    """su(2) generator matrices in the single-photon (spin-S) basis."""

    S: float
    A0: np.ndarray
    Aplus: np.ndarray
    Aminus: np.ndarray
    F: np.ndarray


class MixingAngle(NamedTuple):
    Gamma: float
    two_beta: float
    g_eff: float


def coupling_weight(S, dm) -> float:
    """Mode-coupling weight f(dm) = sqrt((S+1+dm)(S-dm)) on the ladder.

    Defined for dm = -S, -S+1, ..., S-1 (the rung below the top).
    """
    _check_spin(S)
    step = float(dm) + float(S)
    if abs(step - round(step)) > 1e-9 or not (-1e-9 <= step <= 2 * float(S) - 1 + 1e-9):
        raise ValueError(f"dm={dm} outside the ladder -S..S-1 for S={S}")
    return math.sqrt((float(S) + 1.0 + float(dm)) * (float(S) - float(dm)))


def build_generators(S) -> GeneratorSet:
    """Construct A0, A+, A- and F = 2 S_y for spin S.

    Basis ordering is dm = -S..S ascending.  A+ carries f(dm) one step up
    the ladder (subdiagonal), A- = (A+)†, and F is the tridiagonal
    imaginary-Hermitian matrix i(A- - A+).
    """
    two_s = _check_spin(S)
    offs = mode_offsets(S)
    f_vals = np.array([coupling_weight(S, dm) for dm in offs[:-1]])
    a0 = np.diag(offs).astype(np.complex128)
    aplus = np.diag(f_vals, -1).astype(np.complex128)
    aminus = aplus.conj().T.copy()
    f_mat = 1j * (aminus - aplus)
    return GeneratorSet(S=two_s / 2.0, A0=a0, Aplus=aplus, Aminus=aminus, F=f_mat)


def mixing_angle(p: ModulatorParams) -> MixingAngle:
    """Rabi-type frequency Gamma and the diagonalizing angle 2*beta.

    sin(2 beta) = g_eff / Gamma and cos(2 beta) = (omega/2) / Gamma with
    g_eff = 2 gamma / (2S+1); since g_eff >= 0 the angle lies in [0, pi].
    """
    g_eff = 2.0 * p.gamma / p.n_modes
    half_detune = 0.5 * p.omega
    gamma_rabi = math.hypot(half_detune, g_eff)
    if gamma_rabi == 0.0:
        raise ValueError("degenerate parameters: omega = gamma = 0 leaves the "
                         "mixing angle undefined")
    return MixingAngle(Gamma=gamma_rabi,
                       two_beta=math.atan2(g_eff, half_detune),
                       g_eff=g_eff)


def quasi_energy_matrix(p: ModulatorParams) -> np.ndarray:
    """Single-photon quasi-energy matrix omega*(m_tilde + A0) + g_eff*(A+ + A-).

    Real symmetric; its spectrum is the equidistant ladder
    omega*m_tilde + 2*Gamma*k, k = -S..S.
    """
    gen = build_generators(p.S)
    g_eff = 2.0 * p.gamma / p.n_modes
    dim = p.n_modes
    return (p.omega * p.m_tilde * np.eye(dim, dtype=np.complex128)
            + p.omega * gen.A0
            + g_eff * (gen.Aplus + gen.Aminus))
