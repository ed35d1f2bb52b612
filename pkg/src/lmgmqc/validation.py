"""Self-test suite: tridiagonal pipeline against brute-force oracles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.linalg import expm
from scipy.stats import qmc

from .classical import critical_quench_strength, classical_dos, maximum_energy, minimum_energy
from .coherence import mqc_from_amplitudes, mqc_from_matrix
from .eigensolver import eigh, eigvals
from .ensemble import build_diagonal_ensemble
from .quench import amplitudes, prepare
from .spin import ModelParams, build_dense_oracle, build_hamiltonian


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value) and self.value <= self.tolerance)


def oracle_evolution(params: ModelParams, psi0: np.ndarray, t: float) -> np.ndarray:
    """Amplitudes at time t from expm of the product-space Hamiltonian."""
    oracle = build_dense_oracle(params, params.kappa + params.chi)
    even = oracle.dicke_states[:, 0::2]
    state = expm(-1j * t * oracle.full) @ (even @ psi0)
    return even.T @ state


def time_average_oracle(setup, n_times: int = 10_000, t_max: float = 1e5, seed: int = 7) -> np.ndarray:
    """Brute-force average of |psi(t)><psi(t)| over low-discrepancy times in [0, t_max]."""
    times = qmc.Halton(d=1, scramble=True, seed=seed).random(n_times)[:, 0] * t_max
    # dense eigendecomposition, independent of the tridiagonal solver
    values, vectors = np.linalg.eigh(setup.h1.to_dense())
    c = vectors.T @ setup.psi0
    rho = np.zeros((setup.sector.dim, setup.sector.dim), dtype=complex)
    for start in range(0, n_times, 500):
        ts = times[start:start + 500]
        z = vectors @ (c[:, None] * np.exp(-1j * np.outer(values, ts)))
        rho += z @ z.conj().T
    return (rho / n_times).real


def run_checks(max_n: int = 8) -> list[Check]:
    checks: list[Check] = []
    sizes = [n for n in range(2, max_n + 1, 2)]
    for n in sizes:
        for kappa in (0.0, 1.0 / 3.0, 0.5, 1.0):
            chis = [0.0] + ([critical_quench_strength(kappa)] if 1 / 3 < kappa < 1 else [])
            for chi in chis:
                p = ModelParams(kappa, chi, n)
                g = kappa + chi
                tri = build_hamiltonian(p, g)
                orc = build_dense_oracle(p, g)
                tag = f"N={n},kappa={kappa:.6g},chi={chi:.6g}"
                checks.append(Check(f"hamiltonian_vs_oracle[{tag}]",
                                    float(np.abs(tri.to_dense() - orc.even).max()), 1e-12))
                checks.append(Check(f"eigenvalues_vs_oracle[{tag}]",
                                    float(np.abs(eigvals(tri) - np.linalg.eigvalsh(orc.even)).max()), 1e-10))
                if n <= 8:
                    comm = orc.full * orc.parity[None, :] - orc.parity[:, None] * orc.full
                    checks.append(Check(f"parity_commutator[{tag}]", float(np.abs(comm).max()), 1e-12))

    n = max(sizes)
    kappa = 0.5
    chi_c = critical_quench_strength(kappa)
    for ratio in (0.2, 1.0, 2.0):
        setup = prepare(ModelParams(kappa, ratio * chi_c, n))
        for t in (0.1, 3.7, 50.0):
            phase = np.exp(-1j * setup.eig1.values[0] * t)
            spectral = amplitudes(setup, [t])[0] * phase
            exact = oracle_evolution(setup.params, setup.psi0, t)
            checks.append(Check(f"evolution_vs_expm[N={n},chi/chi_c={ratio},t={t}]",
                                float(np.abs(spectral - exact).max()), 1e-8))
            spec = mqc_from_amplitudes(spectral)
            checks.append(Check(f"mqc_sum_rule[N={n},chi/chi_c={ratio},t={t}]",
                                abs(spec.total - 1.0), 1e-10))

    setup = prepare(ModelParams(kappa, 2.0 * chi_c, n))
    ens = build_diagonal_ensemble(setup)
    avg = time_average_oracle(setup)
    checks.append(Check(f"diagonal_ensemble_vs_time_average[N={n}]",
                        float(np.abs(avg - ens.d_matrix).max()), 5e-3))
    spec = mqc_from_matrix(ens.d_matrix)
    checks.append(Check(f"ensemble_sum_rule[N={n}]",
                        abs(spec.total - float(np.trace(ens.d_matrix @ ens.d_matrix))), 1e-10))

    dec = eigh(build_hamiltonian(ModelParams(2 / 3, 0.0, 50)))
    checks.append(Check("eigenvector_orthonormality[N=50]",
                        float(np.abs(dec.vectors.T @ dec.vectors - np.eye(dec.dim)).max()), 1e-10))

    for kappa in (0.2, 2.0 / 3.0):
        lo, hi = minimum_energy(kappa), maximum_energy(kappa)
        pts = [0.0] if lo < 0.0 < hi else None
        total, _ = integrate.quad(lambda e: classical_dos(e, kappa), lo, hi, points=pts, limit=400)
        checks.append(Check(f"classical_dos_normalisation[kappa={kappa:.6g}]", abs(total - 2.0), 1e-3))
    return checks
