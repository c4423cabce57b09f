"""Sparse recovery algorithms built on the weighted-l1 solver."""

from reweightpack.recover.algorithms import (
    CONVERGENCE_TOL,
    DEFAULT_EPS_PRIME,
    DEFAULT_T_MAX,
    DEFAULT_W,
    candes_weights,
    recover_l1,
    recover_weighted,
    reweight_candes,
    reweight_modified,
    run_algorithm,
)
from reweightpack.recover.exceptions import (
    RecoverError,
    RecoveryParameterError,
    UnknownAlgorithmError,
)
from reweightpack.recover.models import (
    SUCCESS_TOLERANCE,
    RecoveryResult,
    WeightVector,
    l1_error,
    relative_l2_error,
)
from reweightpack.recover.selection import select_top_k, support_overlap

__all__ = [
    "CONVERGENCE_TOL",
    "DEFAULT_EPS_PRIME",
    "DEFAULT_T_MAX",
    "DEFAULT_W",
    "SUCCESS_TOLERANCE",
    "RecoverError",
    "RecoveryParameterError",
    "UnknownAlgorithmError",
    "RecoveryResult",
    "WeightVector",
    "candes_weights",
    "recover_l1",
    "recover_weighted",
    "reweight_candes",
    "reweight_modified",
    "run_algorithm",
    "select_top_k",
    "support_overlap",
    "relative_l2_error",
    "l1_error",
]
