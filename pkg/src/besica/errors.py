"""Exception types shared across the package."""


class BesicaError(Exception):
    """Base class for all package errors."""


class DomainError(BesicaError, ValueError):
    """An argument lies outside the domain of the operation."""


class CapacityError(BesicaError, RuntimeError):
    """A computation would exceed a configured size cap."""


class UnsupportedInputError(BesicaError, TypeError):
    """The operation has no exact route for this kind of input."""


class SpecSyntaxError(BesicaError, ValueError):
    """A structured-text spec could not be parsed."""
