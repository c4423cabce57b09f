"""Signal generation exceptions."""


class SignalError(Exception):
    """Base class for signal generation errors."""


class InvalidCountsError(SignalError):
    """Sparsity counts are inconsistent (k_strong > k_total, k_total > n, ...)."""


class InvalidFractionError(SignalError):
    """A fraction or probability lies outside [0, 1]."""


class SignalInvariantError(SignalError):
    """A generated signal violates its model's defining invariants."""
