"""Exception hierarchy shared by the engine and the CLI."""


class CasimirError(Exception):
    """Base class for all engine errors."""


class InputError(CasimirError, ValueError):
    """Invalid user input (bad units, malformed material file, ...)."""


class DomainError(InputError):
    """Argument outside the mathematical domain of an operation."""


class UnsupportedModelError(InputError):
    """Operation is not defined for the given material model."""


class PoleError(CasimirError, ArithmeticError):
    """Evaluation hit a cavity resonance (round-trip denominator vanishes)."""


class RootNotFoundError(CasimirError, ArithmeticError):
    """Bracketed root search could not find a sign change."""


class ConvergenceError(CasimirError, ArithmeticError):
    """A sum or quadrature failed to reach the requested tolerance."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
