"""Exception types raised by the verification library."""


class UmCheckError(Exception):
    """Base class for all library errors."""


class NearZeroConstantTerm(UmCheckError, ZeroDivisionError):
    pass


class OutsideDisk(UmCheckError, ValueError):
    pass


class AtPole(UmCheckError, ZeroDivisionError):
    pass


class InfeasibleExtremal(UmCheckError, ValueError):
    pass


class NoSignChange(UmCheckError, ValueError):
    pass


class DegenerateDenominator(UmCheckError, ZeroDivisionError):
    pass


class InvalidRegime(UmCheckError, ValueError):
    """Pole position at or below the threshold p0; the lambda-window is empty."""


class OutsideWindow(UmCheckError, ValueError):
    """lambda is not strictly inside the proved window (0, lambda_limit(p))."""


class CertificationFailed(UmCheckError, RuntimeError):
    """A witness was found but did not survive validation."""
