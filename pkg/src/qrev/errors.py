"""Exception types raised across the package."""


class QrevError(Exception):
    """Base class for all errors raised by qrev."""


class DimensionMismatch(QrevError, ValueError):
    pass


class NonHermitian(QrevError, ValueError):
    pass


class NotPSD(QrevError, ValueError):
    pass


class NoConvergence(QrevError, RuntimeError):
    pass


class InvalidState(QrevError, ValueError):
    """A matrix failed the density-operator checks (trace, hermiticity, positivity)."""


class InvalidCode(QrevError, ValueError):
    pass


class NotTracePreserving(QrevError, ValueError):
    """Raised when sum_k E_k^dag E_k deviates from the identity.

    The max-norm of the deviation is kept on ``deviation``.
    """

    def __init__(self, message, deviation):
        super().__init__(message)
        self.deviation = deviation


class NotCompletelyPositive(QrevError, ValueError):
    pass


class ParseError(QrevError, ValueError):
    pass
