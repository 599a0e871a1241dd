"""
Exception hierarchy shared by every app.

Library code raises these; the management commands translate them into
``CommandError`` with the matching exit status.
"""


class CoherentThermoError(Exception):
    """Base class for all errors raised by this project"""


class DomainError(CoherentThermoError, ValueError):
    """An argument lies outside the domain of the formula"""


class SingularityError(DomainError):
    """The integrand diverges at the requested starting point"""


class UndefinedMeanError(DomainError):
    """An occupation-weighted mean was requested over zero occupation"""


class SpectrumParseError(DomainError):
    """A spectrum file could not be read"""

    def __init__(self, message, row=None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class OracleScaleError(DomainError):
    """A verification oracle was asked to work beyond its scale bound"""


class ConvergenceError(CoherentThermoError, ArithmeticError):
    """A numerical method failed to reach the requested tolerance"""


class AccuracyError(ConvergenceError):
    """Quadrature finished but its error estimate exceeds the tolerance"""
