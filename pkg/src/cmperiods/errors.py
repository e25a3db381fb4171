"""Exception types shared across the package."""


class CMPeriodsError(Exception):
    """Base class for all package errors."""


class PoleError(CMPeriodsError):
    """Evaluation at a pole of gamma (nonpositive integer argument)."""


class DivergenceError(CMPeriodsError):
    """A hypergeometric series evaluated outside its convergence range."""


class NonconvergenceError(CMPeriodsError):
    """Requested tolerance not reached within the iteration cap."""


class QuadratureError(CMPeriodsError):
    """A quadrature rule failed to converge."""


class UnsupportedCaseError(CMPeriodsError):
    """A parameter degeneration the implementation deliberately excludes."""


class PreconditionError(CMPeriodsError):
    """An operation was called outside its stated precondition."""
