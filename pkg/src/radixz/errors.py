"""Exception hierarchy shared by all radixz modules."""


class RadixError(Exception):
    """Base class for every error raised by radixz."""


class DegenerateMatrixError(RadixError, ValueError):
    """Empty, non-square or otherwise malformed matrix input."""


class SingularMatrixError(DegenerateMatrixError):
    """The matrix has determinant zero."""


class NotDilationError(RadixError):
    """An operation that needs a dilation matrix got something else."""


class DigitSetError(RadixError):
    """Digit enumeration did not produce a complete residue system.

    This always indicates a bug; the enumeration is never truncated.
    """


class DigitNotInSetError(RadixError, ValueError):
    """A representation refers to a vector that is not a digit."""


class StepBudgetExceeded(RadixError):
    """The Euclidean algorithm ran past its certified step budget."""


class InconsistencyError(RadixError):
    """Two independent computations disagree where theory says they cannot."""


class NotNormalError(RadixError, ValueError):
    """The closed-form normal-matrix formula was applied to a non-normal matrix."""


class PowerSearchError(RadixError):
    """No power up to ``beta_max`` passed the singular value test."""

    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = list(trace)


class NonIntegralTransportError(RadixError, ValueError):
    """The lattice map does not send the lattice into itself."""
