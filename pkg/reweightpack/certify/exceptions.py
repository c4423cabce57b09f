"""Certificate subsystem exceptions."""


class CertifyError(Exception):
    """Base class for certificate errors."""


class SetTooLargeError(CertifyError):
    """Index set is too large for exact sign-pattern enumeration."""


class BoundParameterError(CertifyError):
    """Bound formula received parameters outside its domain."""
