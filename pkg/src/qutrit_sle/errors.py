"""Exception hierarchy shared by the library and the CLI."""


class QutritSLEError(ValueError):
    """Base class for all domain errors raised by this package."""


class NotHermitianError(QutritSLEError):
    pass


class SingularMatrixError(QutritSLEError):
    pass


class ConvergenceError(QutritSLEError):
    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class PostSelectionError(QutritSLEError):
    """Raised when the requested measurement outcome has (numerically) zero probability."""

    def __init__(self, probability):
        super().__init__(f"post-selection impossible: probability {probability:.3e}")
        self.probability = probability


class AdmissibilityError(QutritSLEError):
    pass


class DigitCollisionError(QutritSLEError):
    pass


class NoDiscriminatingDigitError(QutritSLEError):
    pass
