"""Exact diagonalization, quench dynamics and multiple-quantum-coherence
spectra of the Lipkin-Meshkov-Glick model."""

__version__ = "0.1.0"

from .classical import (
    KAPPA_C,
    classical_dos,
    classical_energy,
    critical_quench_strength,
    energy_surface_grid,
    fixed_points,
)
from .coherence import MqcSpectrum, i0_max, mqc_from_amplitudes, mqc_from_matrix
from .dos import compare_to_classical, quantum_dos
from .eigensolver import EigenDecomposition, eigh, eigvals
from .ensemble import build_diagonal_ensemble, d_matrix_map, mqc_of_ensemble
from .errors import DegenerateSpectrumError, DomainError, FitError, NumericalFailure
from .quench import (
    evolve,
    i0_max_scan,
    i0_trajectory,
    long_time_avg_width,
    mqc_trajectory,
    peak_location_scaling,
    prepare,
    width_trajectory,
)
from .spin import ModelParams, SpinSector, SymTridiagonal, build_dense_oracle, build_hamiltonian, build_sector
