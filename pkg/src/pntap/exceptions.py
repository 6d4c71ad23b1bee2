"""Error types shared across the toolkit.

Plain ``ValueError`` is used for ordinary argument validation (coprimality,
parameter ranges, malformed inputs); the classes here exist where callers
need to react to the failure mode or recover a partial result.
"""


class PntapError(Exception):
    """Base class for toolkit-specific failures."""


class CapacityError(PntapError):
    """A requested table would exceed the configured memory budget."""


class TableRangeError(PntapError):
    """An argument points beyond the range a table was built for."""


class NonconvergenceError(PntapError):
    """A truncated series cannot be certified to the requested tolerance.

    Carries the best achievable result so callers may degrade gracefully.
    """

    def __init__(self, message, value=None, certificate=None, cutoff=None):
        super().__init__(message)
        self.value = value
        self.certificate = certificate
        self.cutoff = cutoff


class ToleranceUnreachableError(PntapError):
    """A tolerance below what the evaluation scheme can certify."""


class ZeroDenominatorError(PntapError):
    """|F(s)| fell below the zero floor in a logarithmic-derivative step."""
