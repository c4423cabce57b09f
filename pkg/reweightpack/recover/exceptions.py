"""Recovery subsystem exceptions."""


class RecoverError(Exception):
    """Base class for recovery errors."""


class UnknownAlgorithmError(RecoverError):
    """Requested recovery algorithm is not registered."""


class RecoveryParameterError(RecoverError):
    """Algorithm parameter outside its admissible range."""
