"""
Exception hierarchy shared by every qroots module.
"""

from typing import Optional


class QrootsError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ConfigError(QrootsError):
    """Invalid run configuration (bad key, bad value, forbidden ell)."""


class UnsupportedTypeError(QrootsError):
    """Cartan type outside the supported set."""


class NonReducedWordError(QrootsError):
    """A word offered as a reduced expression of w0 is not one."""


class DegreeBoundError(QrootsError):
    """A computation would exceed the configured height bound."""


class ParseError(QrootsError):
    """Element or scalar text does not match the grammar."""

    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class NotRegularError(QrootsError):
    """A scalar has a pole at the chosen root of unity."""


class SingularGramError(QrootsError):
    """A Gram matrix of the Drinfeld pairing is singular."""


class NotCentralError(QrootsError):
    """An element expected to be central fails a commutator test."""


class WindowError(QrootsError):
    """A computation needs grades or degrees outside its window."""


class NotOnVarietyError(QrootsError):
    """A point does not satisfy the defining equations of the variety."""


class UnknownSuiteError(QrootsError):
    """The CLI was asked for a suite that is not registered."""


class CheckError(QrootsError):
    """Raised inside a check to fail it with a witness."""

    def __init__(self, message: str, witness: Optional[dict] = None):
        super().__init__(message)
        self.witness = witness or {}
