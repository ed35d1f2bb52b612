"""Eigendecomposition of real symmetric tridiagonal matrices.

Backed by LAPACK's MRRR driver (``?stemr``) through scipy. Eigenvectors are
returned with a fixed sign convention so that repeated runs, and runs on
different workers, produce bit-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .errors import NumericalFailure
from .spin import SymTridiagonal


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues; column k of ``vectors`` belongs to ``values[k]``."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.values.size


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip columns so the largest-magnitude entry is positive (lowest index wins ties)."""
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def _solve(matrix: SymTridiagonal, eigvals_only: bool):
    try:
        out = eigh_tridiagonal(
            matrix.diag,
            matrix.offdiag,
            eigvals_only=eigvals_only,
            lapack_driver="stemr",
            check_finite=True,
        )
    except (LinAlgError, ValueError) as exc:
        raise NumericalFailure(f"tridiagonal eigensolver failed (dim={matrix.dim}): {exc}") from exc
    return out


def eigh(matrix: SymTridiagonal) -> EigenDecomposition:
    values, vectors = _solve(matrix, eigvals_only=False)
    if not (np.all(np.isfinite(values)) and np.all(np.isfinite(vectors))):
        raise NumericalFailure("tridiagonal eigensolver returned non-finite output")
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = fix_signs(vectors[:, order])
    return EigenDecomposition(values, vectors)


def eigvals(matrix: SymTridiagonal) -> np.ndarray:
    values = _solve(matrix, eigvals_only=True)
    if not np.all(np.isfinite(values)):
        raise NumericalFailure("tridiagonal eigensolver returned non-finite output")
    return np.sort(values, kind="stable")
