"""Exception types raised across the package."""


class AmplitudeError(Exception):
    """Base class for all package errors."""


class CoincidentPoints(AmplitudeError, ValueError):
    """Two points that must be distinct coincide (up to the separation guard)."""

    def __init__(self, message="points coincide", edge=None):
        super().__init__(message)
        self.edge = edge


class NotATree(AmplitudeError, ValueError):
    pass


class TooLarge(AmplitudeError, ValueError):
    pass


class BudgetExceeded(AmplitudeError, RuntimeError):
    pass


class NotPSD(AmplitudeError, ValueError):
    pass


class DimensionMismatch(AmplitudeError, ValueError):
    pass


class SearchExhausted(AmplitudeError, RuntimeError):
    pass
