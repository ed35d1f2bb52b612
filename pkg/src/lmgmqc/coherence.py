"""
Multiple-quantum-coherence (MQC) spectra.

A state rho is split into blocks rho_l collecting the matrix elements
<n|rho|m> whose reference-operator eigenvalues differ by l. The MQC
intensity is the squared Frobenius norm of each block,

    I_l = Tr[rho_l^dagger rho_l] = sum_{nu_n - nu_m = l} |rho_nm|^2,

and the spectrum width is sqrt(sum_l l^2 I_l).

``labels`` are the integer eigenvalues of the reference operator on each
basis vector. They default to the Jz eigenvalues of the even-parity Dicke
sector, m = -j, -j+2, ..., j, so that l is measured in physical units and
only even l carry weight.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class MqcSpectrum:
    """Intensities on the coherence orders ``ells`` (ascending, symmetric about 0)."""

    ells: np.ndarray
    intensities: np.ndarray

    def intensity(self, ell: int) -> float:
        """I_ell; zero for orders without support (e.g. odd ell in a parity sector)."""
        hit = np.nonzero(self.ells == ell)[0]
        return float(self.intensities[hit[0]]) if hit.size else 0.0

    __getitem__ = intensity

    @property
    def zero_mode(self) -> float:
        return self.intensity(0)

    @property
    def total(self) -> float:
        return float(self.intensities.sum())

    @property
    def second_moment(self) -> float:
        return float(np.sum(self.ells.astype(float) ** 2 * self.intensities))

    @property
    def width(self) -> float:
        return float(np.sqrt(self.second_moment))

    def as_dict(self) -> dict[int, float]:
        return {int(l): float(v) for l, v in zip(self.ells, self.intensities)}


def dicke_labels(dim: int) -> np.ndarray:
    """Jz eigenvalues of an even-parity Dicke sector of dimension ``dim``."""
    j = dim - 1
    return -j + 2 * np.arange(dim)


def _uniform_step(labels: np.ndarray) -> int | None:
    if labels.size < 2:
        return 1
    steps = np.diff(labels)
    return int(steps[0]) if steps[0] > 0 and np.all(steps == steps[0]) else None


def _resolve_labels(labels, dim: int) -> np.ndarray:
    if labels is None:
        return dicke_labels(dim)
    labels = np.asarray(labels)
    if labels.shape != (dim,):
        raise DomainError(f"expected {dim} labels, got shape {labels.shape}")
    if not np.all(labels == np.round(labels)):
        raise DomainError("reference labels must be integers")
    return labels.astype(np.int64)


def _group_by_difference(weights: np.ndarray, labels: np.ndarray) -> MqcSpectrum:
    """Sum ``weights[n, m]`` over pairs with labels[n] - labels[m] = l."""
    diff = labels[:, None] - labels[None, :]
    ells, inv = np.unique(diff.ravel(), return_inverse=True)
    vals = np.bincount(inv, weights=weights.ravel(), minlength=ells.size)
    return MqcSpectrum(ells, vals)


def mqc_from_populations(populations: np.ndarray, labels=None) -> MqcSpectrum:
    """MQC spectrum of a pure state given only |zeta_m|^2 (no normalisation check)."""
    p = np.asarray(populations, dtype=float)
    labels = _resolve_labels(labels, p.size)
    step = _uniform_step(labels)
    if step is None:
        return _group_by_difference(np.outer(p, p), labels)
    r = np.correlate(p, p, mode="full")
    r = 0.5 * (r + r[::-1])
    lags = np.arange(-(p.size - 1), p.size)
    return MqcSpectrum(step * lags, r)


def mqc_from_amplitudes(zeta, labels=None, norm_tol: float = 1e-8) -> MqcSpectrum:
    """
    MQC spectrum of the pure state with amplitudes ``zeta``.

    For rho = |psi><psi| the block intensities reduce to
    I_l = sum_m |zeta_m|^2 |zeta_{m+l}|^2, an autocorrelation of the
    populations.
    """
    zeta = np.asarray(zeta)
    p = np.abs(zeta) ** 2
    if abs(p.sum() - 1.0) > norm_tol:
        raise DomainError(f"state is not normalised: sum |zeta|^2 = {p.sum():.12g}")
    return mqc_from_populations(p, labels)


def mqc_from_matrix(rho, labels=None, herm_tol: float = 1e-10, trace_tol: float = 1e-8) -> MqcSpectrum:
    """MQC spectrum of a density matrix from the squared norms of its coherence blocks."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DomainError(f"density matrix must be square, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T), initial=0.0) > herm_tol:
        raise DomainError("density matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        raise DomainError(f"density matrix trace is {tr.real:.12g}, expected 1")
    dim = rho.shape[0]
    labels = _resolve_labels(labels, dim)
    step = _uniform_step(labels)
    weights = np.abs(rho) ** 2
    if step is None:
        return _group_by_difference(weights, labels)
    # rho_l lives on the band n - m = l / step
    offsets = np.arange(-(dim - 1), dim)
    vals = np.array([np.sum(np.diagonal(weights, -k)) for k in offsets])
    return MqcSpectrum(step * offsets, vals)


def purity(rho) -> float:
    rho = np.asarray(rho)
    return float(np.real(np.trace(rho @ rho)))


def i0_max(i0_series) -> float:
    """Largest sampled zero-mode intensity."""
    series = np.asarray(i0_series, dtype=float)
    if series.size == 0:
        raise DomainError("empty I_0 series")
    return float(series.max())
