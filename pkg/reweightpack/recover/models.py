"""Recovery results and weight vectors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from reweightpack.core.types import Algorithm
from reweightpack.lp import validate_weights
from reweightpack.numcore import DenseVector, IndexSet, as_dense_vector

SUCCESS_TOLERANCE = 1e-4


@dataclass(frozen=True, slots=True)
class WeightVector:
    """Strictly positive diagonal of a weighted-l1 objective."""

    weights: DenseVector = field(repr=False)

    def __post_init__(self) -> None:
        validated = validate_weights(self.weights, int(np.size(self.weights)))
        object.__setattr__(self, "weights", validated)

    @classmethod
    def ones(cls, n: int) -> "WeightVector":
        return cls(np.ones(n))

    @classmethod
    def two_level(cls, n: int, inner: IndexSet, *, inner_weight: float, outer_weight: float) -> "WeightVector":
        """`inner_weight` on `inner`, `outer_weight` everywhere else."""
        weights = np.full(n, float(outer_weight))
        if inner:
            weights[list(inner)] = float(inner_weight)
        return cls(weights)

    @property
    def n(self) -> int:
        return int(self.weights.shape[0])


def relative_l2_error(estimate: ArrayLike, x_true: ArrayLike) -> float:
    """||x_hat - x||_2 / ||x||_2, or the absolute error when x = 0."""
    truth = as_dense_vector(x_true)
    difference = as_dense_vector(estimate, length=truth.shape[0]) - truth
    scale = float(np.linalg.norm(truth))
    error = float(np.linalg.norm(difference))
    return error / scale if scale > 0.0 else error


def l1_error(estimate: ArrayLike, x_true: ArrayLike) -> float:
    truth = as_dense_vector(x_true)
    return float(np.sum(np.abs(as_dense_vector(estimate, length=truth.shape[0]) - truth)))


@dataclass(frozen=True, slots=True)
class RecoveryResult:
    """Final estimate of a recovery run with its per-stage history.

    `stage_estimates` holds one entry per weighted solve, in order; for the
    two-stage algorithm the first entry is the plain l1 estimate from which
    `selected_set` was taken.
    `converged` is False only when an iterative run stopped at its step limit
    before two consecutive iterates agreed; single-solve algorithms report True.
    """

    algorithm: Algorithm
    estimate: DenseVector = field(repr=False)
    stage_estimates: list[DenseVector] = field(repr=False)
    residual: float
    objective: float
    selected_set: IndexSet = ()
    weights: WeightVector | None = field(default=None, repr=False)
    iterations: int = 0
    converged: bool = True

    @property
    def stages(self) -> int:
        return len(self.stage_estimates)

    def relative_l2_error(self, x_true: ArrayLike) -> float:
        return relative_l2_error(self.estimate, x_true)

    def l1_error(self, x_true: ArrayLike) -> float:
        return l1_error(self.estimate, x_true)

    def success_vs(self, x_true: ArrayLike, tol: float = SUCCESS_TOLERANCE) -> bool:
        return self.relative_l2_error(x_true) <= tol

    def to_dict(self) -> dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "estimate": self.estimate.tolist(),
            "stage_estimates": [stage.tolist() for stage in self.stage_estimates],
            "selected_set": list(self.selected_set),
            "residual": self.residual,
            "objective": self.objective,
            "iterations": self.iterations,
            "converged": self.converged,
        }
