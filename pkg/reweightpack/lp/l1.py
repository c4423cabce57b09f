"""l1 and weighted-l1 minimization encoded as linear programs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from reweightpack.core.types import L1_ENCODINGS, L1Encoding
from reweightpack.lp.exceptions import (
    LpInfeasibleError,
    LpProblemError,
    LpUnboundedError,
    NonPositiveWeightError,
)
from reweightpack.lp.problem import LpProblem, LpSolution, SimplexConfig
from reweightpack.lp.simplex import solve_lp
from reweightpack.numcore import (
    DenseVector,
    InvalidDimensionsError,
    as_dense_matrix,
    as_dense_vector,
    max_abs,
)


@dataclass(frozen=True, slots=True)
class L1Solution:
    """Weighted-l1 minimizer with its objective and feasibility residual."""

    estimate: DenseVector = field(repr=False)
    objective: float
    residual: float
    iterations: int
    encoding: L1Encoding

    def to_dict(self) -> dict[str, Any]:
        return {
            "estimate": self.estimate.tolist(),
            "objective": self.objective,
            "residual": self.residual,
            "iterations": self.iterations,
            "encoding": self.encoding,
        }


def validate_weights(w: ArrayLike, n: int) -> DenseVector:
    weights = as_dense_vector(w, length=n)
    if np.any(weights <= 0.0):
        bad = int(np.flatnonzero(weights <= 0.0)[0])
        raise NonPositiveWeightError(
            f"weights must be strictly positive; weight {bad} is {weights[bad]!r}"
        )
    return weights


def solve_weighted_l1(
    a: ArrayLike,
    y: ArrayLike,
    w: ArrayLike | None = None,
    *,
    encoding: L1Encoding = "split",
    config: SimplexConfig | None = None,
) -> L1Solution:
    """min sum_i w_i |x_i|  s.t.  A x = y."""
    matrix = as_dense_matrix(a)
    m, n = matrix.shape
    try:
        rhs = as_dense_vector(y, length=m)
    except InvalidDimensionsError as error:
        raise LpProblemError(str(error)) from error
    weights = np.ones(n) if w is None else validate_weights(w, n)
    if encoding not in L1_ENCODINGS:
        raise LpProblemError(f"unknown l1 encoding '{encoding}'")

    if encoding == "split":
        problem = _split_problem(matrix, rhs, weights)
    else:
        problem = _epigraph_problem(matrix, rhs, weights)

    solution = solve_lp(problem, config=config)
    if solution.status == "infeasible":
        raise LpInfeasibleError("measurements are outside the range of A", solution)
    if solution.status == "unbounded":
        raise LpUnboundedError("weighted l1 program reported unbounded", solution)

    estimate = _extract_estimate(solution, n, encoding)
    return L1Solution(
        estimate=estimate,
        objective=float(weights @ np.abs(estimate)),
        residual=max_abs(matrix @ estimate - rhs),
        iterations=solution.iterations,
        encoding=encoding,
    )


def l1_minimize(
    a: ArrayLike,
    y: ArrayLike,
    *,
    encoding: L1Encoding = "split",
    config: SimplexConfig | None = None,
) -> DenseVector:
    """Basis pursuit: argmin ||x||_1 subject to A x = y."""
    return solve_weighted_l1(a, y, None, encoding=encoding, config=config).estimate


def weighted_l1_minimize(
    a: ArrayLike,
    y: ArrayLike,
    w: ArrayLike,
    *,
    encoding: L1Encoding = "split",
    config: SimplexConfig | None = None,
) -> DenseVector:
    return solve_weighted_l1(a, y, w, encoding=encoding, config=config).estimate


def _split_problem(a: np.ndarray, y: np.ndarray, w: np.ndarray) -> LpProblem:
    # x = u - v with u, v >= 0
    return LpProblem.build(
        np.concatenate([w, w]),
        eq_matrix=np.hstack([a, -a]),
        eq_rhs=y,
    )


def _epigraph_problem(a: np.ndarray, y: np.ndarray, w: np.ndarray) -> LpProblem:
    # variables (x, t, s_plus, s_minus):  x - t + s_plus = 0,  -x - t + s_minus = 0
    m, n = a.shape
    eye = np.eye(n)
    zeros_mn = np.zeros((m, n))
    zeros_nn = np.zeros((n, n))
    eq_matrix = np.vstack(
        [
            np.hstack([a, zeros_mn, zeros_mn, zeros_mn]),
            np.hstack([eye, -eye, eye, zeros_nn]),
            np.hstack([-eye, -eye, zeros_nn, eye]),
        ]
    )
    lower = np.concatenate([np.full(n, -np.inf), np.zeros(3 * n)])
    return LpProblem.build(
        np.concatenate([np.zeros(n), w, np.zeros(2 * n)]),
        eq_matrix=eq_matrix,
        eq_rhs=np.concatenate([y, np.zeros(2 * n)]),
        lower=lower,
    )


def _extract_estimate(solution: LpSolution, n: int, encoding: L1Encoding) -> DenseVector:
    primal = solution.primal
    if encoding == "split":
        return primal[:n] - primal[n : 2 * n]
    return primal[:n].copy()
