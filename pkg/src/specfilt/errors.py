"""Exception types shared across the package."""


class DatasetError(ValueError):
    """Malformed or inconsistent dataset directory; carries file and line."""

    def __init__(self, message, path=None, line=None):
        loc = ""
        if path is not None:
            loc = f"{path}: " if line is None else f"{path}:{line}: "
        super().__init__(f"{loc}{message}")
        self.path = path
        self.line = line


class CapExceededError(ValueError):
    """Dense decomposition requested above the configured size cap."""


class PoleError(ArithmeticError):
    """A frequency response is non-finite at an eigenvalue of the operator."""

    def __init__(self, message, lam=None):
        super().__init__(message)
        self.lam = lam


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach its tolerance."""


class TrainingDivergedError(RuntimeError):
    """Training produced a non-finite loss."""
