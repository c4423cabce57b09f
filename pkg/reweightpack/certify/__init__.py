"""Null-space certificates and recovery bound formulas."""

from reweightpack.certify.bounds import (
    max_tail_for_p1,
    p1_lower_bound,
    p2_upper_bound,
    recovery_error_bound,
    strong_hits_lower_bound,
    support_error_bound,
)
from reweightpack.certify.exceptions import BoundParameterError, CertifyError, SetTooLargeError
from reweightpack.certify.kappa import MAX_EXACT_SET_SIZE, compute_kappa, estimate_kappa_grid
from reweightpack.certify.models import (
    BEST_C_FAILURE,
    ProbabilityBound,
    RobustnessCertificate,
    RobustnessCheck,
    SupportErrorBound,
)
from reweightpack.certify.robustness import (
    C_CEILING,
    C_FLOOR,
    C_RESOLUTION,
    HOLDS_TOLERANCE,
    certificate,
    check_weak_robustness,
    estimate_best_C,
)

__all__ = [
    "BEST_C_FAILURE",
    "C_CEILING",
    "C_FLOOR",
    "C_RESOLUTION",
    "HOLDS_TOLERANCE",
    "MAX_EXACT_SET_SIZE",
    "CertifyError",
    "SetTooLargeError",
    "BoundParameterError",
    "ProbabilityBound",
    "RobustnessCertificate",
    "RobustnessCheck",
    "SupportErrorBound",
    "compute_kappa",
    "estimate_kappa_grid",
    "check_weak_robustness",
    "estimate_best_C",
    "certificate",
    "recovery_error_bound",
    "support_error_bound",
    "strong_hits_lower_bound",
    "p1_lower_bound",
    "p2_upper_bound",
    "max_tail_for_p1",
]
