"""Exception types raised across the package."""


class DomainError(ValueError):
    """Input outside the domain of an operation (non-finite, wrong norm, ...)."""


class DimensionError(ValueError):
    """Mismatched or unsupported Hilbert-space dimensions."""


class NotUnitaryError(ValueError):
    pass


class NotHermitianError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    """Fixed-point iteration of an implicit step did not converge.

    The last residual and iteration count are kept on the instance so callers
    can decide whether to retry with a smaller step.
    """

    def __init__(self, message, residual=float("nan"), iterations=0):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class TruncationError(RuntimeError):
    """Fock-space truncation too small for the requested dynamics."""
