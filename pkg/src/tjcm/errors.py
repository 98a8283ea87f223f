"""Exception types shared across the package."""


class TjcmError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(TjcmError, ValueError):
    """A physical or numerical parameter is out of its allowed range."""


class ContractViolationError(TjcmError):
    """An input violates a structural precondition (e.g. non-symmetric block)."""


class InternalConsistencyError(TjcmError):
    """A computed quantity violates a structural guarantee of the model."""


class TruncationError(TjcmError):
    """The Fock-space truncation is too coarse for the requested accuracy."""


class StepSizeError(TjcmError):
    """The integrator step size is too large for the requested trajectory."""


class UsageError(TjcmError):
    """A user-facing configuration error (bad channel name, bad flag value)."""


class ResourceRefusalError(TjcmError):
    """A run was refused because it would exceed a configured resource bound."""
