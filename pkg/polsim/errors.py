"""Exception and warning types shared across polsim."""

from __future__ import annotations


class PolsimError(Exception):
    """Base class for every error raised by polsim."""


class DomainError(PolsimError, ValueError):
    """A numeric argument lies outside the domain of an operation."""


class UnsupportedVariantError(DomainError):
    """The operation is not defined for this spectrum variant or parameter."""


class InvalidStateError(PolsimError, ValueError):
    """A matrix is not a valid two-qubit density matrix."""


class DegenerateOutcomeError(PolsimError, ArithmeticError):
    """Post-selection kept nothing: the upconverted amplitude vanishes."""


class ResolutionError(PolsimError, ArithmeticError):
    """Quadrature order too small for the oscillation it has to resolve."""

    def __init__(self, message: str, required_order: int) -> None:
        super().__init__(message)
        self.required_order = required_order


class NumericalError(PolsimError, ArithmeticError):
    """Internal numerical failure that valid inputs should never trigger."""


class ConfigError(PolsimError, ValueError):
    """Invalid sweep configuration; `key` names the offending entry."""

    def __init__(self, key: str, message: str) -> None:
        super().__init__(f"{key}: {message}")
        self.key = key


class SeparationWarning(UserWarning):
    """Double-peak spectrum whose peaks are too close for the closed forms."""
