"""Exception hierarchy shared by every module."""


class WellCoverError(Exception):
    """Base class for all errors raised by :mod:`wellcover`."""


class DegenerateInputError(WellCoverError, ValueError):
    """Input is structurally valid but too degenerate to operate on."""


class InvalidCoverError(WellCoverError, ValueError):
    """A clique cover or partition does not satisfy its invariants."""


class SizeLimitError(WellCoverError):
    """A brute-force routine was asked to run beyond its configured bound."""


class ParseError(WellCoverError, ValueError):
    """Malformed graph or report document."""
