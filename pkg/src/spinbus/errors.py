"""Error types shared across the package."""


class CapacityError(Exception):
    """A requested computation exceeds the desk-scale size limits."""


class ParityError(ValueError):
    """An operation was asked for on a chain of the wrong parity."""


class ConvergenceError(Exception):
    """Iterative eigensolver failed to reach the requested residual."""

    def __init__(self, message: str, best_residual: float | None = None):
        super().__init__(message)
        self.best_residual = best_residual
