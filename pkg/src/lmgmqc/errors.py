"""Exception types raised across the package."""


class DomainError(ValueError):
    """An input lies outside the domain an operation is defined on."""


class NumericalFailure(RuntimeError):
    """A numerical routine failed to converge or produced unusable output."""


class DegenerateSpectrumError(DomainError):
    """Two eigenvalues are closer than the non-degeneracy tolerance."""

    def __init__(self, lower: int, upper: int, gap: float, tol: float):
        self.pair = (lower, upper)
        self.gap = gap
        self.tol = tol
        super().__init__(
            f"levels {lower} and {upper} are degenerate: gap {gap:.3e} <= tol {tol:.3e}"
        )


class FitError(ValueError):
    """A least-squares fit is ill-posed for the supplied data."""
