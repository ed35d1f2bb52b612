"""
Classical (j -> infinity) limit of the LMG model.

Energies are per spin. The classical Hamiltonian on the disk p^2 + q^2 <= 4 is

    H_c(p, q) = -(kappa q^2 / 8)(4 - p^2 - q^2) + (1 - kappa)(p^2 + q^2) / 4.

It is linear in p^2, which reduces the phase-space density of states to a
one-dimensional integral over q with inverse-square-root singularities at
the turning points.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DomainError, NumericalFailure

KAPPA_C = 1.0 / 3.0
CRITICAL_ENERGY = 0.0

QUAD_EPSABS = 1e-8
QUAD_EPSREL = 1e-6
QUAD_LIMIT = 400


@dataclass(frozen=True)
class PhasePoint:
    p: float
    q: float

    def __post_init__(self):
        if self.p**2 + self.q**2 > 4.0 + 1e-12:
            raise DomainError(f"(p, q) = ({self.p}, {self.q}) lies outside the disk p^2 + q^2 <= 4")


@dataclass(frozen=True)
class ClassicalCriticalData:
    kappa: float
    fixed_points: tuple[PhasePoint, ...]
    fixed_point_energy: float
    kappa_c: float = KAPPA_C
    critical_energy: float = CRITICAL_ENERGY

    @property
    def minima(self) -> tuple[PhasePoint, ...]:
        if len(self.fixed_points) == 1:
            return self.fixed_points
        return tuple(pt for pt in self.fixed_points if pt.q != 0.0)

    @property
    def saddle(self) -> PhasePoint | None:
        return PhasePoint(0.0, 0.0) if len(self.fixed_points) > 1 else None


def _check_kappa(kappa: float) -> None:
    if not (0.0 <= kappa <= 1.0):
        raise DomainError(f"kappa must lie in [0, 1], got {kappa!r}")


def energy(p, q, kappa: float):
    """Vectorised classical energy; no domain check."""
    r2 = p * p + q * q
    return -(kappa * q * q / 8.0) * (4.0 - r2) + 0.25 * (1.0 - kappa) * r2


def classical_energy(point: PhasePoint, kappa: float) -> float:
    return float(energy(point.p, point.q, kappa))


def gradient(p, q, kappa: float):
    """Analytic (dH/dp, dH/dq)."""
    dp = p * (kappa * q * q / 4.0 + 0.5 * (1.0 - kappa))
    dq = q * (-kappa + kappa * p * p / 4.0 + kappa * q * q / 2.0 + 0.5 * (1.0 - kappa))
    return dp, dq


def fixed_points(kappa: float) -> ClassicalCriticalData:
    _check_kappa(kappa)
    if kappa <= KAPPA_C:
        return ClassicalCriticalData(kappa, (PhasePoint(0.0, 0.0),), 0.0)
    q = math.sqrt((3.0 * kappa - 1.0) / kappa)
    e_f = -((3.0 * kappa - 1.0) ** 2) / (8.0 * kappa)
    pts = (PhasePoint(0.0, -q), PhasePoint(0.0, 0.0), PhasePoint(0.0, q))
    return ClassicalCriticalData(kappa, pts, e_f)


def minimum_energy(kappa: float) -> float:
    return fixed_points(kappa).fixed_point_energy


def maximum_energy(kappa: float) -> float:
    """The disk boundary (a single point on the Bloch sphere) sits at 1 - kappa."""
    _check_kappa(kappa)
    return 1.0 - kappa


def critical_quench_strength(kappa: float) -> float:
    """Quench strength that puts the post-quench energy of the ground state at E_c = 0."""
    if not (KAPPA_C < kappa < 1.0):
        raise DomainError(f"critical quench strength needs 1/3 < kappa < 1, got {kappa!r}")
    return -kappa * (3.0 * kappa - 1.0) / (kappa + 1.0)


@dataclass(frozen=True)
class EnergySurface:
    p: np.ndarray
    q: np.ndarray
    energy: np.ndarray  # NaN outside the disk
    valid: np.ndarray


def energy_surface_grid(kappa: float, resolution: int) -> EnergySurface:
    """Classical energy on a regular ``resolution`` x ``resolution`` grid over [-2, 2]^2."""
    _check_kappa(kappa)
    if resolution < 2:
        raise DomainError(f"resolution must be >= 2, got {resolution}")
    axis = np.linspace(-2.0, 2.0, resolution)
    p, q = np.meshgrid(axis, axis, indexing="ij")
    valid = p * p + q * q <= 4.0
    e = np.where(valid, energy(p, q, kappa), np.nan)
    return EnergySurface(p, q, e, valid)


# --------------------------------------------------------------------------
# density of states
# --------------------------------------------------------------------------

def _upper_root(eps: float, a2: float, a1: float) -> float:
    """Larger root u+ of a2 u^2 + a1 u - eps = 0, computed without cancellation."""
    disc = a1 * a1 + 4.0 * a2 * eps
    sd = math.sqrt(max(disc, 0.0))
    if a1 >= 0.0:
        den = a1 + sd
        return 0.0 if den == 0.0 else 2.0 * eps / den
    return (-a1 + sd) / (2.0 * a2)


def _quad(func, lo, hi):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(
                func, lo, hi, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT
            )
        except integrate.IntegrationWarning as exc:
            raise NumericalFailure(f"classical DOS quadrature did not converge: {exc}") from exc
    return val


def classical_dos(energy_per_spin: float, kappa: float) -> float:
    """
    Classical density of states (1/2pi) * iint delta(eps - H_c) dp dq.

    For fixed q, H_c = A(q) + B(q) p^2 with B > 0, so the p-integral gives
    1 / sqrt(B (eps - A)) on the q-range where eps >= A(q). With u = q^2,
    eps - A = (u+ - u) * G(u) where u+ is the upper turning point and
    G(u) = kappa (u + u+) / 8 + (1 - 3 kappa) / 4. A cosine substitution
    absorbs the 1/sqrt singularity at each turning point so the remaining
    integrand is smooth.

    Returns 0 outside the classical energy range and ``inf`` exactly at the
    logarithmically divergent critical energy (eps = 0, kappa >= 1/3).
    """
    _check_kappa(kappa)
    eps = float(energy_per_spin)
    if not math.isfinite(eps):
        raise DomainError(f"energy must be finite, got {energy_per_spin!r}")
    e_min = minimum_energy(kappa)
    e_max = maximum_energy(kappa)
    if eps <= e_min or eps >= e_max:
        return 0.0
    if kappa >= KAPPA_C and eps == CRITICAL_ENERGY:
        return math.inf

    a2 = kappa / 8.0
    a1 = (1.0 - 3.0 * kappa) / 4.0
    b0 = (1.0 - kappa) / 4.0
    u_hi = _upper_root(eps, a2, a1)
    q_hi = math.sqrt(u_hi)

    def bq(q):
        return kappa * q * q / 8.0 + b0

    def g(u):
        return kappa * (u + u_hi) / 8.0 + a1

    if a1 < 0.0 and eps < 0.0:
        # two turning points q_lo < q_hi; q = q_lo + L sin^2(theta/2)
        u_lo = -eps / (a2 * u_hi)
        q_lo = math.sqrt(u_lo)
        length = q_hi - q_lo

        def integrand(theta):
            q = q_lo + length * math.sin(0.5 * theta) ** 2
            # eps - A = a2 (q - q_lo)(q + q_lo)(q_hi - q)(q_hi + q)
            return 1.0 / math.sqrt(bq(q) * a2 * (q + q_lo) * (q_hi + q))

        half = _quad(integrand, 0.0, math.pi)
    else:
        # q in [0, q_hi], turning point only at q_hi; q = q_hi cos(phi)
        scale = math.sqrt(2.0 * q_hi)

        def integrand(phi):
            q = q_hi * math.cos(phi)
            # |dq| = 2 q_hi sin(phi/2) cos(phi/2) dphi, q_hi - q = 2 q_hi sin^2(phi/2)
            return scale * math.cos(0.5 * phi) / math.sqrt(bq(q) * g(q * q) * (q_hi + q))

        half = _quad(integrand, 0.0, 0.5 * math.pi)
    # q and -q contribute equally
    return 2.0 * half / (2.0 * math.pi)


def classical_dos_array(energies, kappa: float) -> np.ndarray:
    return np.array([classical_dos(e, kappa) for e in np.ravel(energies)]).reshape(np.shape(energies))


def sublevel_area(energy_per_spin: float, kappa: float, resolution: int = 2000) -> float:
    """Area of {H_c <= eps} inside the disk by grid counting (midpoint cells)."""
    h = 4.0 / resolution
    axis = -2.0 + h * (np.arange(resolution) + 0.5)
    p, q = np.meshgrid(axis, axis, indexing="ij")
    inside = (p * p + q * q <= 4.0) & (energy(p, q, kappa) <= energy_per_spin)
    return float(inside.sum()) * h * h
