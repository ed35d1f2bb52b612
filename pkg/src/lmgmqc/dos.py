"""Quantum density of states and its comparison with the classical limit."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import KAPPA_C, classical_dos_array
from .errors import DomainError


@dataclass(frozen=True)
class DosHistogram:
    bin_edges: np.ndarray
    counts: np.ndarray
    normalized_density: np.ndarray

    @property
    def bin_centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[1:] + self.bin_edges[:-1])

    @property
    def bin_widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)

    def peak_bin(self) -> int:
        return int(np.argmax(self.normalized_density))

    def peak_bins(self) -> list[int]:
        """All bins sharing the maximal count (ties are common at large N)."""
        return [int(i) for i in np.flatnonzero(self.counts == self.counts.max())]


@dataclass(frozen=True)
class DosComparison:
    l1_distance: float
    excluded_bins: list[int]
    bin_centers: np.ndarray
    quantum_density: np.ndarray
    classical_density: np.ndarray


def quantum_dos(values, n_spins: int, bins: int = 100) -> DosHistogram:
    """
    Histogram of eigenvalues per spin on [min, max] with ``bins`` uniform bins.

    Bins are closed on the right, so a value on an interior edge is counted
    in the lower bin.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise DomainError("need at least one eigenvalue")
    if int(bins) != bins or bins < 1:
        raise DomainError(f"bins must be a positive integer, got {bins!r}")
    eps = values / n_spins
    lo, hi = float(eps.min()), float(eps.max())
    if hi == lo:
        lo, hi = lo - 0.5, hi + 0.5
    edges = np.linspace(lo, hi, int(bins) + 1)
    # right-closed bins (a, b], the first one closed on both sides
    idx = np.clip(np.searchsorted(edges, eps, side="left") - 1, 0, int(bins) - 1)
    counts = np.bincount(idx, minlength=int(bins)).astype(float)
    density = counts / (counts.sum() * np.diff(edges))
    return DosHistogram(edges, counts, density)


def critical_bins(hist: DosHistogram, energy: float = 0.0) -> list[int]:
    """Indices of bins whose closed interval contains ``energy``."""
    e = hist.bin_edges
    return [i for i in range(e.size - 1) if e[i] <= energy <= e[i + 1]]


def compare_to_classical(hist: DosHistogram, kappa: float) -> DosComparison:
    """
    L1 distance between the histogram and the unit-normalised classical DOS.

    The classical curve is sampled at bin centres and renormalised over the
    histogram's support. For kappa > 1/3 the bin(s) containing the
    divergent critical energy are left out of the distance.
    """
    centers = hist.bin_centers
    widths = hist.bin_widths
    rho = classical_dos_array(centers, kappa)
    excluded = critical_bins(hist) if kappa > KAPPA_C else []
    keep = np.ones(centers.size, dtype=bool)
    keep[excluded] = False
    # a centre sitting exactly on the divergence only happens inside an excluded bin
    if not np.all(np.isfinite(rho[keep])):
        raise DomainError("classical DOS is not finite on the compared bins")
    rho = np.where(np.isfinite(rho), rho, 0.0)
    norm = float(np.sum(rho * widths))
    if norm <= 0.0:
        raise DomainError("classical DOS has no weight on the histogram support")
    rho = rho / norm
    l1 = float(np.sum(np.abs(hist.normalized_density - rho)[keep] * widths[keep]))
    return DosComparison(l1, excluded, centers, hist.normalized_density, rho)
