"""LP problem/solution models and solver configuration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np
from numpy.typing import ArrayLike

from reweightpack.numcore import DenseMatrix, DenseVector, as_dense_matrix, as_dense_vector
from reweightpack.lp.exceptions import LpProblemError

LpStatus = Literal["optimal", "infeasible", "unbounded"]


@dataclass(frozen=True, slots=True)
class SimplexConfig:
    """Tolerances and pivot budgets for the bounded-variable simplex."""

    feasibility_tol: float = 1e-8
    optimality_tol: float = 1e-9
    pivot_tol: float = 1e-9
    degenerate_tol: float = 1e-12
    bound_tol: float = 1e-9
    # Bland's rule takes over after this many degenerate pivots per (rows + cols).
    bland_after_factor: int = 5
    iteration_cap_factor: int = 50
    refresh_interval: int = 64

    def __post_init__(self) -> None:
        for name in ("feasibility_tol", "optimality_tol", "pivot_tol", "bound_tol"):
            if getattr(self, name) <= 0:
                raise LpProblemError(f"{name} must be positive")
        if self.bland_after_factor < 0 or self.iteration_cap_factor < 1:
            raise LpProblemError("pivot budget factors must be non-negative")
        if self.refresh_interval < 1:
            raise LpProblemError("refresh_interval must be >= 1")


@dataclass(frozen=True, slots=True)
class LpProblem:
    """min c^T x  s.t.  A_eq x = b_eq,  lower <= x <= upper."""

    objective: DenseVector
    eq_matrix: DenseMatrix
    eq_rhs: DenseVector
    lower: DenseVector
    upper: DenseVector

    @property
    def num_vars(self) -> int:
        return int(self.objective.shape[0])

    @property
    def num_rows(self) -> int:
        return int(self.eq_matrix.shape[0])

    @classmethod
    def build(
        cls,
        objective: ArrayLike,
        *,
        eq_matrix: ArrayLike | None = None,
        eq_rhs: ArrayLike | None = None,
        lower: ArrayLike | None = None,
        upper: ArrayLike | None = None,
    ) -> "LpProblem":
        """Validate inputs; bounds default to [0, +inf)."""
        c = as_dense_vector(objective)
        n = c.shape[0]
        if eq_matrix is None:
            a = np.zeros((0, n))
            b = np.zeros(0)
        else:
            a = as_dense_matrix(eq_matrix)
            b = as_dense_vector(eq_rhs if eq_rhs is not None else np.zeros(a.shape[0]))
        if a.shape[1] != n:
            raise LpProblemError(
                f"eq_matrix has {a.shape[1]} columns but objective has length {n}"
            )
        if a.shape[0] != b.shape[0]:
            raise LpProblemError(
                f"eq_matrix has {a.shape[0]} rows but eq_rhs has length {b.shape[0]}"
            )
        lo = _bound_vector(lower, n, default=0.0, name="lower")
        hi = _bound_vector(upper, n, default=np.inf, name="upper")
        if np.any(lo == np.inf) or np.any(hi == -np.inf):
            raise LpProblemError("lower bounds may not be +inf and upper bounds may not be -inf")
        if np.any(lo > hi):
            bad = int(np.flatnonzero(lo > hi)[0])
            raise LpProblemError(f"variable {bad} has lower bound above upper bound")
        return cls(objective=c, eq_matrix=a, eq_rhs=b, lower=lo, upper=hi)


@dataclass(frozen=True, slots=True)
class LpSolution:
    """Solver verdict with the terminal primal point."""

    status: LpStatus
    primal: DenseVector = field(repr=False)
    objective_value: float
    iterations: int
    phase1_iterations: int = 0
    bland_activated: bool = False

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "primal": self.primal.tolist(),
            "objective_value": self.objective_value,
            "iterations": self.iterations,
            "phase1_iterations": self.phase1_iterations,
            "bland_activated": self.bland_activated,
        }


def _bound_vector(
    value: ArrayLike | None,
    n: int,
    *,
    default: float,
    name: str,
) -> DenseVector:
    if value is None:
        return np.full(n, default, dtype=np.float64)
    vector = np.array(value, dtype=np.float64).reshape(-1)
    if vector.shape[0] == 1 and n != 1:
        vector = np.full(n, vector[0])
    if vector.shape[0] != n:
        raise LpProblemError(f"{name} bounds have length {vector.shape[0]}, expected {n}")
    if np.any(np.isnan(vector)):
        raise LpProblemError(f"{name} bounds contain NaN")
    return vector
