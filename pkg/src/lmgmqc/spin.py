"""
Hilbert space and Hamiltonians of the Lipkin-Meshkov-Glick model.

The model is

    H = -(2 kappa / N) Jx^2 + (1 - kappa) (Jz + N/2)

restricted to the maximal total spin j = N/2 and to even parity
Pi = exp(i pi (j + Jz)). In the Dicke basis |m> (Jz|m> = m|m>) Jx^2 only
couples m to m and m +- 2, so the even-parity block is a real symmetric
tridiagonal matrix over m = -j, -j+2, ..., j.

A brute-force construction on the full 2^N product space is provided as a
validation oracle for small N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np
import scipy.sparse as sp

from .errors import DomainError

MAX_ORACLE_SPINS = 12


@dataclass(frozen=True)
class SpinSector:
    """Even-parity sector of the j = N/2 multiplet, ordered by ascending m."""

    n_spins: int
    j: int = field(init=False)
    dim: int = field(init=False)
    m_values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n = self.n_spins
        if isinstance(n, bool) or int(n) != n or n < 2 or n % 2:
            raise DomainError(f"n_spins must be an even integer >= 2, got {n!r}")
        n = int(n)
        object.__setattr__(self, "n_spins", n)
        object.__setattr__(self, "j", n // 2)
        object.__setattr__(self, "dim", n // 2 + 1)
        m = -(n // 2) + 2 * np.arange(n // 2 + 1)
        m.setflags(write=False)
        object.__setattr__(self, "m_values", m)

    def index_of(self, m: int) -> int:
        i, r = divmod(m + self.j, 2)
        if r or not 0 <= i < self.dim:
            raise DomainError(f"m={m} is not in the even-parity sector of j={self.j}")
        return i


def build_sector(n_spins: int) -> SpinSector:
    return SpinSector(n_spins)


@dataclass(frozen=True)
class ModelParams:
    """Pre-quench coupling ``kappa``, quench strength ``chi`` and system size."""

    kappa: float
    chi: float = 0.0
    n_spins: int = 2

    def __post_init__(self):
        if not (0.0 <= self.kappa <= 1.0):
            raise DomainError(f"kappa must lie in [0, 1], got {self.kappa!r}")
        if not np.isfinite(self.chi):
            raise DomainError(f"chi must be finite, got {self.chi!r}")
        SpinSector(self.n_spins)

    @property
    def sector(self) -> SpinSector:
        return SpinSector(self.n_spins)


@dataclass(frozen=True)
class SymTridiagonal:
    """Real symmetric tridiagonal matrix stored as its two bands."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float)
        e = np.asarray(self.offdiag, dtype=float)
        if d.ndim != 1 or e.ndim != 1 or e.size != max(d.size - 1, 0) or d.size == 0:
            raise DomainError(
                f"need diag of length n >= 1 and offdiag of length n-1, got {d.shape}, {e.shape}"
            )
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise DomainError("tridiagonal entries must be finite")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def dim(self) -> int:
        return self.diag.size

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def max_abs(self) -> float:
        """Largest entry magnitude (the max-norm)."""
        return float(max(np.abs(self.diag).max(), np.abs(self.offdiag).max(initial=0.0)))

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diag[:, None] * v if v.ndim == 2 else self.diag * v
        e = self.offdiag if v.ndim == 1 else self.offdiag[:, None]
        out[:-1] += e * v[1:]
        out[1:] += e * v[:-1]
        return out

    def expectation(self, v: np.ndarray) -> float:
        """<v|M|v> for a (possibly complex) vector."""
        return float(np.real(np.vdot(v, self.matvec(v))))


def jx_squared_bands(sector: SpinSector) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and m -> m+2 elements of Jx^2 in the even-parity Dicke basis."""
    j = sector.j
    m = sector.m_values.astype(float)
    diag = 0.5 * (j * (j + 1) - m**2)
    mm = m[:-1]
    off = 0.25 * np.sqrt((j - mm) * (j + mm + 1) * (j - mm - 1) * (j + mm + 2))
    return diag, off


def build_hamiltonian(params: ModelParams, effective_coupling: float | None = None) -> SymTridiagonal:
    """
    Even-parity block of the LMG Hamiltonian.

    Parameters
    ----------
    params
        Model parameters; ``params.kappa`` sets the (1 - kappa) field term.
    effective_coupling
        Prefactor g of the -(2g/N) Jx^2 term. Defaults to ``params.kappa``,
        giving the pre-quench Hamiltonian. Passing ``kappa + chi`` gives the
        post-quench Hamiltonian H - (2 chi / N) Jx^2.
    """
    sector = params.sector
    g = params.kappa if effective_coupling is None else float(effective_coupling)
    n = sector.n_spins
    jx2_diag, jx2_off = jx_squared_bands(sector)
    diag = -(2.0 * g / n) * jx2_diag + (1.0 - params.kappa) * (sector.m_values + n / 2)
    off = -(2.0 * g / n) * jx2_off
    return SymTridiagonal(diag, off)


def pre_quench_hamiltonian(params: ModelParams) -> SymTridiagonal:
    return build_hamiltonian(params, params.kappa)


def post_quench_hamiltonian(params: ModelParams) -> SymTridiagonal:
    return build_hamiltonian(params, params.kappa + params.chi)


# --------------------------------------------------------------------------
# brute-force oracle
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DenseOracle:
    """
    Product-space Hamiltonian and its projections.

    Attributes
    ----------
    full
        Dense 2^N x 2^N Hamiltonian.
    parity
        Diagonal of the parity operator in the product basis.
    dicke
        (N+1) x (N+1) projection onto the j = N/2 multiplet, ascending m.
    even, odd
        Projections onto the even / odd parity Dicke states, ascending m.
    """

    full: np.ndarray
    parity: np.ndarray
    dicke: np.ndarray
    even: np.ndarray
    odd: np.ndarray
    dicke_states: np.ndarray


def _collective(n: int, single: np.ndarray) -> sp.csr_matrix:
    eye = sp.identity(2, format="csr")
    total = sp.csr_matrix((2**n, 2**n))
    for site in range(n):
        op = sp.identity(1, format="csr")
        for k in range(n):
            op = sp.kron(op, single if k == site else eye, format="csr")
        total = total + op
    return total


def dicke_states(n_spins: int) -> np.ndarray:
    """Columns |j=N/2, m> for m = -N/2 ... N/2 in the product basis (bit 0 = up)."""
    dim = 2**n_spins
    downs = np.array([bin(b).count("1") for b in range(dim)])
    ups = n_spins - downs
    states = np.zeros((dim, n_spins + 1))
    for k in range(n_spins + 1):
        states[ups == k, k] = 1.0 / np.sqrt(comb(n_spins, k))
    return states


def build_dense_oracle(params: ModelParams, effective_coupling: float | None = None) -> DenseOracle:
    n = params.n_spins
    if n > MAX_ORACLE_SPINS:
        raise DomainError(f"dense oracle limited to N <= {MAX_ORACLE_SPINS}, got {n}")
    g = params.kappa if effective_coupling is None else float(effective_coupling)
    sx = sp.csr_matrix(np.array([[0.0, 0.5], [0.5, 0.0]]))
    sz = sp.csr_matrix(np.array([[0.5, 0.0], [0.0, -0.5]]))
    jx = _collective(n, sx)
    jz = _collective(n, sz)
    eye = sp.identity(2**n, format="csr")
    h = -(2.0 * g / n) * (jx @ jx) + (1.0 - params.kappa) * (jz + (n / 2) * eye)
    full = h.toarray()
    full = 0.5 * (full + full.T)

    ups = n - np.array([bin(b).count("1") for b in range(2**n)])
    parity = np.where(ups % 2 == 0, 1.0, -1.0)

    states = dicke_states(n)
    dicke = states.T @ full @ states
    # m = k - N/2 with k up spins; parity (-1)^(j+m) = (-1)^k
    even_idx = np.arange(0, n + 1, 2)
    odd_idx = np.arange(1, n + 1, 2)
    return DenseOracle(
        full=full,
        parity=parity,
        dicke=dicke,
        even=dicke[np.ix_(even_idx, even_idx)],
        odd=dicke[np.ix_(odd_idx, odd_idx)],
        dicke_states=states,
    )
