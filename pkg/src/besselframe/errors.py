"""Exception hierarchy."""


class BesselFrameError(Exception):
    """Base class for all package errors."""


class InvalidOrderError(BesselFrameError, ValueError):
    """Order p outside the supported range."""


class DomainError(BesselFrameError, ValueError):
    """Argument outside an operation's domain."""


class ToleranceNotReachedError(BesselFrameError, ArithmeticError):
    """Series hit the max-terms cap before the requested tolerance."""


class NoSignChangeError(BesselFrameError, ArithmeticError):
    """No sign change of J_p found while locating its first zero."""


class IndeterminateError(BesselFrameError, ArithmeticError):
    """Error bounds too large to decide a sign."""
