"""Exception types raised across the package."""


class ExtremeZerosError(Exception):
    """Base class for every error raised by this package."""


class ParameterDomainError(ExtremeZerosError, ValueError):
    """Family parameters or degree outside the admissible domain."""


class HypothesisError(ExtremeZerosError, ValueError):
    """A bound was requested outside the hypotheses it is proved under."""


class InapplicableError(ExtremeZerosError, ValueError):
    """A bound or check does not apply at the requested point."""


class DegenerateWindowError(ExtremeZerosError, ValueError):
    """The region where the discriminant is positive is empty."""


class OracleFailure(ExtremeZerosError, RuntimeError):
    """The zero oracle could not certify its result."""


class SearchFailure(ExtremeZerosError, RuntimeError):
    """A bracketing search found no sign change within its step cap."""
