"""
Sudden-quench dynamics and the MQC observables of the evolved state.

The system starts in the even-parity ground state |psi0> of
H0 = H(kappa) and evolves under H1 = H0 - (2 chi / N) Jx^2. Evolution is
spectral: with H1|k> = E_k|k> and c_k = <k|psi0>,

    zeta_m(t) = sum_k <m|k> c_k exp(-i E_k t),

so there is no time-stepping error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks

from .classical import KAPPA_C, critical_quench_strength
from .coherence import MqcSpectrum, mqc_from_populations
from .eigensolver import EigenDecomposition, eigh
from .errors import DomainError, FitError
from .spin import (
    ModelParams,
    SpinSector,
    SymTridiagonal,
    post_quench_hamiltonian,
    pre_quench_hamiltonian,
)

TAU = 30.0
DT = 0.05
T0 = 1.0e4
T_AVG = 1.0e3
N_SAMPLES = 1000

# bounds peak memory of the D x n_times amplitude blocks
_TIME_CHUNK = 256


@dataclass(frozen=True)
class QuenchSetup:
    params: ModelParams
    sector: SpinSector
    h0: SymTridiagonal
    h1: SymTridiagonal
    eig1: EigenDecomposition
    psi0: np.ndarray
    overlaps: np.ndarray

    @property
    def labels(self) -> np.ndarray:
        return self.sector.m_values

    def initial_energy(self) -> float:
        """<psi0|H1|psi0>."""
        return self.h1.expectation(self.psi0)


@dataclass(frozen=True)
class EvolvedAmplitudes:
    time: float
    zeta: np.ndarray

    @property
    def populations(self) -> np.ndarray:
        return np.abs(self.zeta) ** 2


@dataclass(frozen=True)
class WidthSeries:
    times: np.ndarray
    w: np.ndarray
    w_bar: float | None = None


def prepare(params: ModelParams, check_kappa: bool = True) -> QuenchSetup:
    """
    Ground state of H0 and the eigendecomposition of H1.

    ``check_kappa`` enforces the broken-symmetry window 1/3 < kappa < 1 the
    quench protocol is defined on; switch it off for synthetic checks.
    """
    if check_kappa and not (KAPPA_C < params.kappa < 1.0):
        raise DomainError(f"quench protocol needs 1/3 < kappa < 1, got {params.kappa!r}")
    h0 = pre_quench_hamiltonian(params)
    h1 = post_quench_hamiltonian(params)
    psi0 = eigh(h0).vectors[:, 0].copy()
    return setup_from_state(params, psi0, h0=h0, h1=h1)


def setup_from_state(params: ModelParams, psi0, h0=None, h1=None) -> QuenchSetup:
    """Quench setup with an arbitrary normalised initial state."""
    h0 = pre_quench_hamiltonian(params) if h0 is None else h0
    h1 = post_quench_hamiltonian(params) if h1 is None else h1
    psi0 = np.asarray(psi0)
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-12:
        raise DomainError("initial state must be normalised")
    eig1 = eigh(h1)
    overlaps = eig1.vectors.T @ psi0
    return QuenchSetup(params, params.sector, h0, h1, eig1, psi0, overlaps)


def _amplitude_block(setup: QuenchSetup, times: np.ndarray) -> np.ndarray:
    """zeta_m(t) as an (n_times, dim) array."""
    # global phase exp(-i E_0 t) dropped to keep the phases small
    energies = setup.eig1.values - setup.eig1.values[0]
    phases = np.exp(-1j * np.outer(energies, times))
    return (setup.eig1.vectors @ (setup.overlaps[:, None] * phases)).T


def amplitudes(setup: QuenchSetup, times) -> np.ndarray:
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if np.any(times < 0):
        raise DomainError("times must be non-negative")
    out = np.empty((times.size, setup.sector.dim), dtype=complex)
    for start in range(0, times.size, _TIME_CHUNK):
        sl = slice(start, start + _TIME_CHUNK)
        out[sl] = _amplitude_block(setup, times[sl])
    return out


def populations(setup: QuenchSetup, times) -> np.ndarray:
    """|zeta_m(t)|^2 as an (n_times, dim) array."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if np.any(times < 0):
        raise DomainError("times must be non-negative")
    out = np.empty((times.size, setup.sector.dim))
    for start in range(0, times.size, _TIME_CHUNK):
        sl = slice(start, start + _TIME_CHUNK)
        out[sl] = np.abs(_amplitude_block(setup, times[sl])) ** 2
    return out


def evolve(setup: QuenchSetup, t: float) -> EvolvedAmplitudes:
    if t < 0:
        raise DomainError(f"time must be non-negative, got {t}")
    if t == 0:
        return EvolvedAmplitudes(0.0, setup.psi0.astype(complex))
    zeta = amplitudes(setup, [t])[0] * np.exp(-1j * setup.eig1.values[0] * t)
    return EvolvedAmplitudes(float(t), zeta)


def _check_ascending(times: np.ndarray) -> None:
    if np.any(np.diff(times) < 0):
        raise DomainError("times must be ascending")


def mqc_trajectory(setup: QuenchSetup, times, return_populations: bool = False):
    """MQC spectra of rho(t); optionally also the |zeta_m(t)|^2 map."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    _check_ascending(times)
    pops = populations(setup, times)
    spectra = [(float(t), mqc_from_populations(p, setup.labels)) for t, p in zip(times, pops)]
    if return_populations:
        return spectra, pops
    return spectra


def i0_trajectory(setup: QuenchSetup, times) -> np.ndarray:
    """Zero-mode intensity I_0(t) = sum_m |zeta_m(t)|^4."""
    pops = populations(setup, times)
    return np.sum(pops**2, axis=1)


def width_from_populations(pops: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """
    MQC width of pure states from their populations.

    sum_l l^2 I_l = sum_{n,m} (m_n - m_m)^2 p_n p_m = 2 Var_p(m) for a
    normalised p, which avoids building the full spectrum.
    """
    m = labels.astype(float)
    mean = pops @ m
    var = pops @ (m * m) - mean**2
    return np.sqrt(np.maximum(2.0 * var, 0.0))


def width_trajectory(setup: QuenchSetup, times) -> WidthSeries:
    times = np.atleast_1d(np.asarray(times, dtype=float))
    _check_ascending(times)
    return WidthSeries(times, width_from_populations(populations(setup, times), setup.labels))


def averaging_times(t0: float = T0, T: float = T_AVG, n_samples: int = N_SAMPLES) -> np.ndarray:
    if t0 <= 0 or T <= 0:
        raise DomainError("t0 and T must be positive")
    if n_samples < 1:
        raise DomainError("n_samples must be >= 1")
    return np.linspace(t0, t0 + T, int(n_samples))


def long_time_avg_width(setup: QuenchSetup, t0: float = T0, T: float = T_AVG,
                        n_samples: int = N_SAMPLES) -> float:
    """Mean of w(t) over ``n_samples`` uniformly spaced times in [t0, t0 + T]."""
    series = width_trajectory(setup, averaging_times(t0, T, n_samples))
    return float(np.mean(series.w))


def time_grid(tau: float = TAU, dt: float = DT) -> np.ndarray:
    if tau <= 0 or dt <= 0:
        raise DomainError("tau and dt must be positive")
    n = int(round(tau / dt))
    return np.linspace(0.0, n * dt, n + 1)


def i0_max_scan(kappa: float, n_spins: int, chi_grid, tau: float = TAU, dt: float = DT) -> np.ndarray:
    """Maximum of I_0(t) over t in [0, tau] for each quench strength."""
    times = time_grid(tau, dt)
    out = []
    for chi in np.asarray(chi_grid, dtype=float):
        setup = prepare(ModelParams(kappa, float(chi), n_spins))
        out.append(float(i0_trajectory(setup, times).max()))
    return np.array(out)


def width_scan(kappa: float, n_spins: int, chi_grid, t0: float = T0, T: float = T_AVG,
               n_samples: int = N_SAMPLES) -> np.ndarray:
    """Long-time averaged width for each quench strength."""
    return np.array([
        long_time_avg_width(prepare(ModelParams(kappa, float(chi), n_spins)), t0, T, n_samples)
        for chi in np.asarray(chi_grid, dtype=float)
    ])


def chi_grid_from_ratios(kappa: float, ratios) -> np.ndarray:
    return critical_quench_strength(kappa) * np.asarray(ratios, dtype=float)


def default_ratio_grid(start: float = 0.2, stop: float = 2.0, step: float = 0.05) -> np.ndarray:
    n = int(round((stop - start) / step))
    return np.round(start + step * np.arange(n + 1), 12)


# --------------------------------------------------------------------------
# peak location and finite-size scaling
# --------------------------------------------------------------------------


def local_maxima(values) -> list[int]:
    """Indices of strict interior local maxima."""
    v = np.asarray(values, dtype=float)
    return [i for i in range(1, v.size - 1) if v[i] > v[i - 1] and v[i] > v[i + 1]]


def prominent_peaks(values, rel_prominence: float = 0.05) -> list[int]:
    """
    Interior local maxima whose topographic prominence is at least
    ``rel_prominence`` times the largest value.

    Small wiggles from finite-time sampling of w(t) are ignored this way.
    """
    v = np.asarray(values, dtype=float)
    idx, _ = find_peaks(v, prominence=rel_prominence * float(np.max(np.abs(v))))
    return [int(i) for i in idx]


def refine_peak(x, y) -> float:
    """Argmax of ``y`` refined by a parabola through the maximum and its neighbours."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    i = int(np.argmax(y))
    if i == 0 or i == y.size - 1:
        return float(x[i])
    coeffs = np.polyfit(x[i - 1:i + 2], y[i - 1:i + 2], 2)
    if coeffs[0] >= 0:
        return float(x[i])
    return float(-coeffs[1] / (2.0 * coeffs[0]))


@dataclass(frozen=True)
class PowerLawFit:
    """|y| = prefactor * N**(-exponent), fitted in log-log space."""

    prefactor: float
    exponent: float
    intercept: float  # ln(prefactor)
    r_squared: float

    def __call__(self, n):
        return self.prefactor * np.asarray(n, dtype=float) ** (-self.exponent)


def fit_power_law(n_values, y) -> PowerLawFit:
    n = np.asarray(n_values, dtype=float)
    y = np.abs(np.asarray(y, dtype=float))
    if n.size < 3 or y.size != n.size:
        raise FitError(f"need at least 3 matching (N, y) points, got {n.size} and {y.size}")
    if np.any(y <= np.finfo(float).tiny) or np.any(n <= 0):
        raise FitError("power-law fit needs strictly positive N and |y|")
    if np.unique(n).size < 2:
        raise FitError("power-law fit needs at least two distinct system sizes")
    ln_n, ln_y = np.log(n), np.log(y)
    slope, intercept = np.polyfit(ln_n, ln_y, 1)
    resid = ln_y - (slope * ln_n + intercept)
    ss_tot = float(np.sum((ln_y - ln_y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return PowerLawFit(float(np.exp(intercept)), float(-slope), float(intercept), r2)


@dataclass(frozen=True)
class ScalingResult:
    kappa: float
    n_values: np.ndarray
    chi_ratios: np.ndarray
    w_bar: np.ndarray  # (len(n_values), len(chi_ratios))
    chi_max_ratios: np.ndarray
    fit: PowerLawFit

    @property
    def deviations(self) -> np.ndarray:
        return np.abs(self.chi_max_ratios - 1.0)


def peak_location_scaling(kappa: float, n_values, chi_ratios, t0: float = T0, T: float = T_AVG,
                          n_samples: int = N_SAMPLES, w_bar=None) -> ScalingResult:
    """
    Location of the long-time averaged width peak for each N, and a
    power-law fit of its distance to the critical quench strength.

    ``w_bar`` may carry precomputed scans (one row per N).
    """
    n_values = np.asarray(n_values, dtype=int)
    ratios = np.asarray(chi_ratios, dtype=float)
    if n_values.size < 3:
        raise FitError("scaling needs at least 3 system sizes")
    if w_bar is None:
        chis = chi_grid_from_ratios(kappa, ratios)
        w_bar = np.array([width_scan(kappa, int(n), chis, t0, T, n_samples) for n in n_values])
    w_bar = np.asarray(w_bar, dtype=float)
    peaks = np.array([refine_peak(ratios, row) for row in w_bar])
    fit = fit_power_law(n_values, peaks - 1.0)
    return ScalingResult(kappa, n_values, ratios, w_bar, peaks, fit)
