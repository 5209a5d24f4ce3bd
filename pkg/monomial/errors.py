"""Exceptions raised across the package."""


class IdealFormatError(ValueError):
    """Ideal text could not be read as a minimal set of square-free generators."""


class NotPureError(ValueError):
    """The ideal is not pure of a degree the characterization applies to."""


class EnumerationBoundsError(ValueError):
    pass


class InvariantError(RuntimeError):
    """An internal cross-check between two independent computations failed."""


class TheoremViolation(RuntimeError):
    """Direct f-vector comparison and the characterization disagree."""
