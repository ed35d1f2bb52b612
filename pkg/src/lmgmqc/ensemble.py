"""
Long-time averaged state of a quench and its MQC spectrum.

For a non-degenerate post-quench spectrum the time average kills every
off-diagonal term in the H1 eigenbasis, leaving

    D[m', m] = sum_k <m'|k><k|m> |<psi0|k>|^2,

a real symmetric, unit-trace, positive semidefinite matrix in the Dicke basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coherence import MqcSpectrum, mqc_from_matrix
from .errors import DegenerateSpectrumError
from .quench import QuenchSetup, prepare
from .spin import ModelParams

GAP_RTOL = 1e-10


@dataclass(frozen=True)
class DiagonalEnsemble:
    d_matrix: np.ndarray
    m_values: np.ndarray
    kappa: float
    chi: float
    n_spins: int

    @property
    def populations(self) -> np.ndarray:
        return np.diag(self.d_matrix).copy()


def check_nondegenerate(values: np.ndarray, tol: float) -> None:
    gaps = np.diff(values)
    if gaps.size and gaps.min() <= tol:
        k = int(np.argmin(gaps))
        raise DegenerateSpectrumError(k, k + 1, float(gaps[k]), tol)


def build_diagonal_ensemble(setup: QuenchSetup, gap_tol: float | None = None) -> DiagonalEnsemble:
    """
    Diagonal-ensemble density matrix of ``setup``.

    Raises DegenerateSpectrumError when two H1 levels are closer than
    ``gap_tol`` (default 1e-10 times the max-norm of H1), since the
    dropped cross terms would not average out.
    """
    tol = GAP_RTOL * setup.h1.max_abs() if gap_tol is None else float(gap_tol)
    check_nondegenerate(setup.eig1.values, tol)
    v = setup.eig1.vectors
    weights = np.abs(setup.overlaps) ** 2
    d = (v * weights) @ v.T
    d = 0.5 * (d + d.T)
    p = setup.params
    return DiagonalEnsemble(d, setup.sector.m_values, p.kappa, p.chi, p.n_spins)


def mqc_of_ensemble(ens: DiagonalEnsemble) -> MqcSpectrum:
    return mqc_from_matrix(ens.d_matrix, ens.m_values)


def zero_mode(ens: DiagonalEnsemble) -> float:
    """I_0 of the averaged state, sum_m D[m, m]^2."""
    return float(np.sum(ens.populations ** 2))


def rescaled_width(ens: DiagonalEnsemble, spectrum: MqcSpectrum | None = None) -> float:
    """MQC width of the averaged state divided by N."""
    spectrum = mqc_of_ensemble(ens) if spectrum is None else spectrum
    return spectrum.width / ens.n_spins


@dataclass(frozen=True)
class DMap:
    """D[m + l, m] in long format, ordered by m then l (both ascending)."""

    m: np.ndarray
    ell: np.ndarray
    value: np.ndarray
    n_spins: int

    @property
    def m_over_n(self) -> np.ndarray:
        return self.m / self.n_spins

    @property
    def l_over_n(self) -> np.ndarray:
        return self.ell / self.n_spins

    def ell_second_moment(self) -> float:
        """sum l^2 |D| / sum |D|: the spread of D along the coherence axis."""
        a = np.abs(self.value)
        return float(np.sum(self.ell.astype(float) ** 2 * a) / np.sum(a))


def d_matrix_map(ens: DiagonalEnsemble) -> DMap:
    m = ens.m_values
    dim = m.size
    rows_m, rows_l, vals = [], [], []
    for col in range(dim):
        rows_m.append(np.full(dim, m[col]))
        rows_l.append(m - m[col])
        vals.append(ens.d_matrix[:, col])
    return DMap(np.concatenate(rows_m), np.concatenate(rows_l), np.concatenate(vals), ens.n_spins)


def ensemble_scan(kappa: float, n_spins: int, chi_grid):
    """(I_0, rescaled width) of the diagonal ensemble for each quench strength."""
    i0, wt = [], []
    for chi in np.asarray(chi_grid, dtype=float):
        ens = build_diagonal_ensemble(prepare(ModelParams(kappa, float(chi), n_spins)))
        spec = mqc_of_ensemble(ens)
        i0.append(spec.zero_mode)
        wt.append(spec.width / n_spins)
    return np.array(i0), np.array(wt)
