"""Exception types shared across the package."""


class LeibcohError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(LeibcohError):
    """Malformed input file or expression."""


class AxiomError(LeibcohError):
    """An algebra or module failed its defining identities."""

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = violations or []


class LinAlgError(LeibcohError):
    """Dimension mismatch or ill-posed linear-algebra request."""


class ChainMapError(LeibcohError):
    """A map does not respect the subspace/quotient structure it claims to."""


class ResourceLimitError(LeibcohError):
    """A requested computation exceeds the structural-nonzero budget."""
