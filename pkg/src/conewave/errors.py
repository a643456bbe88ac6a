"""Exception hierarchy shared by every conewave module."""


class ConewaveError(Exception):
    """Base class for all errors raised by conewave."""


class DomainError(ConewaveError, ValueError):
    """A parameter lies outside the region where a formula is valid."""


class PoleError(DomainError):
    """Evaluation at (or numerically at) a pole of the gamma function."""


class ConvergenceError(ConewaveError, ArithmeticError):
    """A quadrature or series did not reach its tolerance within budget."""


class ConeSingularityError(DomainError):
    """Evaluation too close to the light cone ``|tau| = |xi|``."""


class GridAliasError(ConewaveError):
    """Spectral content of a sampled field reaches the Nyquist band."""


class FieldFormatError(ConewaveError, ValueError):
    """A field file is malformed or inconsistent with the request."""
