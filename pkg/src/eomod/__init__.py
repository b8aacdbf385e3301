"""Electro-optic modulator models: finite-mode su(2) dynamics vs Bessel sidebands."""

from .detection import FilterSpec, SpectralScan, filter_kernel, relative_count_rate, spectral_scan
from .dynamics import (
    ClosedFormAngles,
    PropagatorMatrix,
    central_mode_probability,
    closed_form_angles,
    find_revival_peak,
    mean_field_envelope,
    mode_occupations,
    propagator,
    revival_scan,
)
from .kernels import active_backend
from .numkernel import EigenDecomposition, expm_skew_hermitian, hermitian_eigen
from .su2 import (
    GeneratorSet,
    MixingAngle,
    ModulatorParams,
    build_generators,
    coupling_weight,
    mixing_angle,
    mode_offsets,
    quasi_energy_matrix,
)
from .unrestricted import (
    ModulationIndex,
    asymptotic_compare,
    bessel_j,
    bessel_j_sequence,
    classical_signal_check,
    default_cutoff,
    modulation_index,
    unrestricted_occupations,
)
from .wigner import (
    CapabilityError,
    WignerMatrix,
    jacobi_bessel_limit_check,
    jacobi_poly,
    wigner_d_exponential,
    wigner_d_factorial,
    wigner_d_jacobi,
)

__version__ = "0.1.0"
