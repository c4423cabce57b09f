"""Signal models: two-part strong/tail, nonuniform two-class, block, k-sparse."""

from reweightpack.signals.exceptions import (
    InvalidCountsError,
    InvalidFractionError,
    SignalError,
    SignalInvariantError,
)
from reweightpack.signals.generators import (
    expected_nonzeros,
    generate_block_signal,
    generate_model_signal,
    generate_nonuniform_signal,
    gaussian_sparse_signal,
)
from reweightpack.signals.models import ModelSignal, NonuniformSignal

__all__ = [
    "SignalError",
    "InvalidCountsError",
    "InvalidFractionError",
    "SignalInvariantError",
    "ModelSignal",
    "NonuniformSignal",
    "generate_model_signal",
    "gaussian_sparse_signal",
    "generate_nonuniform_signal",
    "generate_block_signal",
    "expected_nonzeros",
]
