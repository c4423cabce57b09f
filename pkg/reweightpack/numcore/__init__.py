"""Dense arithmetic, seeded sampling and null-space computation."""

from reweightpack.numcore.arrays import (
    DenseMatrix,
    DenseVector,
    IndexSet,
    as_dense_matrix,
    as_dense_vector,
    as_index_set,
    complement,
    l1_norm,
    max_abs,
    restricted_l1,
    support,
)
from reweightpack.numcore.exceptions import (
    IndexOutOfRangeError,
    InvalidDimensionsError,
    InvalidSeedError,
    NonFiniteError,
    NumcoreError,
    RankDeficientError,
)
from reweightpack.numcore.nullspace import (
    RANK_TOLERANCE,
    null_space_basis,
    numerical_rank,
    require_full_row_rank,
)
from reweightpack.numcore.sampling import (
    MeasurementMatrix,
    default_rng,
    derive_seed,
    normalize_seed,
    sample_gaussian_matrix,
    sample_measurement_matrix,
    sample_sign_vector,
)

__all__ = [
    "DenseMatrix",
    "DenseVector",
    "IndexSet",
    "MeasurementMatrix",
    "NumcoreError",
    "InvalidDimensionsError",
    "InvalidSeedError",
    "NonFiniteError",
    "RankDeficientError",
    "IndexOutOfRangeError",
    "RANK_TOLERANCE",
    "as_dense_matrix",
    "as_dense_vector",
    "as_index_set",
    "complement",
    "l1_norm",
    "restricted_l1",
    "max_abs",
    "support",
    "numerical_rank",
    "require_full_row_rank",
    "null_space_basis",
    "default_rng",
    "derive_seed",
    "normalize_seed",
    "sample_gaussian_matrix",
    "sample_measurement_matrix",
    "sample_sign_vector",
]
