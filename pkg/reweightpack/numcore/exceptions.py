"""Numcore subsystem exceptions."""


class NumcoreError(Exception):
    """Base class for dense numerics errors."""


class InvalidDimensionsError(NumcoreError):
    """Requested matrix or vector dimensions are invalid."""


class NonFiniteError(NumcoreError):
    """Array contains NaN or infinite entries."""


class RankDeficientError(NumcoreError):
    """Matrix does not have full row rank at the configured tolerance."""


class IndexOutOfRangeError(NumcoreError):
    """Index set refers to positions outside the vector."""


class InvalidSeedError(NumcoreError):
    """Seed is not a 64-bit unsigned integer."""
