"""Shared exception types."""


class InvalidInput(ValueError):
    """Raised when a constructor or loader receives inconsistent data."""


class TruncationInsufficient(ValueError):
    """Raised when a computation needs simplices above the dimension bound.

    Homology in degree k is only trustworthy for k < dim_bound, since the
    boundary of (k+1)-simplices enters the computation.
    """


class MissingFreeOrbit(InvalidInput):
    """Raised when a family-indexed construction needs the trivial subgroup."""


class Disconnected(InvalidInput):
    """Raised when a basepointed construction receives a disconnected space."""
