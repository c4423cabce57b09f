"""Plain l1, iterative reweighting and the two-stage modified reweighting."""

from __future__ import annotations

import logging

import numpy as np
from numpy.typing import ArrayLike

from reweightpack.core.types import ALGORITHMS, Algorithm, L1Encoding
from reweightpack.lp import L1Solution, SimplexConfig, solve_weighted_l1
from reweightpack.numcore import as_dense_matrix, as_dense_vector, max_abs
from reweightpack.recover.exceptions import RecoveryParameterError, UnknownAlgorithmError
from reweightpack.recover.models import RecoveryResult, WeightVector
from reweightpack.recover.selection import select_top_k

logger = logging.getLogger(__name__)

DEFAULT_EPS_PRIME = 0.1
DEFAULT_T_MAX = 4
DEFAULT_W = 10.0
CONVERGENCE_TOL = 1e-9


def recover_l1(
    a: ArrayLike,
    y: ArrayLike,
    *,
    encoding: L1Encoding = "split",
    config: SimplexConfig | None = None,
) -> RecoveryResult:
    solution = solve_weighted_l1(a, y, encoding=encoding, config=config)
    return RecoveryResult(
        algorithm="l1",
        estimate=solution.estimate,
        stage_estimates=[solution.estimate],
        residual=solution.residual,
        objective=solution.objective,
        weights=WeightVector.ones(solution.estimate.shape[0]),
        iterations=solution.iterations,
    )


def recover_weighted(
    a: ArrayLike,
    y: ArrayLike,
    weights: ArrayLike,
    *,
    encoding: L1Encoding = "split",
    config: SimplexConfig | None = None,
) -> RecoveryResult:
    weight_vector = weights if isinstance(weights, WeightVector) else WeightVector(as_dense_vector(weights))
    solution = solve_weighted_l1(a, y, weight_vector.weights, encoding=encoding, config=config)
    return RecoveryResult(
        algorithm="weighted",
        estimate=solution.estimate,
        stage_estimates=[solution.estimate],
        residual=solution.residual,
        objective=solution.objective,
        weights=weight_vector,
        iterations=solution.iterations,
    )


def reweight_candes(
    a: ArrayLike,
    y: ArrayLike,
    eps_prime: float = DEFAULT_EPS_PRIME,
    t_max: int = DEFAULT_T_MAX,
    *,
    encoding: L1Encoding = "split",
    config: SimplexConfig | None = None,
) -> RecoveryResult:
    """Iteratively reweighted l1 with w_i = 1 / (|x_i| + eps_prime).

    Runs at most t_max + 1 weighted solves starting from unit weights and
    stops once consecutive iterates agree to 1e-9 in the sup norm. The result
    is `converged` only when that agreement was observed, so t_max=0 always
    reports False.
    """
    if not eps_prime > 0:
        raise RecoveryParameterError(f"eps_prime must be positive, got {eps_prime}")
    if t_max < 0:
        raise RecoveryParameterError(f"t_max must be non-negative, got {t_max}")

    matrix = as_dense_matrix(a)
    weights = WeightVector.ones(matrix.shape[1])
    stages: list[np.ndarray] = []
    iterations = 0
    converged = False
    solution: L1Solution | None = None

    for step in range(t_max + 1):
        solution = solve_weighted_l1(matrix, y, weights.weights, encoding=encoding, config=config)
        iterations += solution.iterations
        stages.append(solution.estimate)
        if step > 0:
            change = max_abs(stages[-1] - stages[-2])
            logger.debug("reweighting step %d: sup-norm change %.3e", step, change)
            if change <= CONVERGENCE_TOL:
                converged = True
                break
        if step < t_max:
            weights = candes_weights(solution.estimate, eps_prime)

    assert solution is not None
    return RecoveryResult(
        algorithm="candes",
        estimate=solution.estimate,
        stage_estimates=stages,
        residual=solution.residual,
        objective=solution.objective,
        weights=weights,
        iterations=iterations,
        converged=converged,
    )


def candes_weights(estimate: ArrayLike, eps_prime: float = DEFAULT_EPS_PRIME) -> WeightVector:
    """w_i = 1 / (|x_i| + eps_prime); larger entries are penalized less."""
    if not eps_prime > 0:
        raise RecoveryParameterError(f"eps_prime must be positive, got {eps_prime}")
    return WeightVector(1.0 / (np.abs(as_dense_vector(estimate)) + eps_prime))


def reweight_modified(
    a: ArrayLike,
    y: ArrayLike,
    k_strong: int,
    W: float = DEFAULT_W,
    *,
    encoding: L1Encoding = "split",
    config: SimplexConfig | None = None,
) -> RecoveryResult:
    """Two-stage reweighting: plain l1, then weight 1 on the top-k_strong block and W off it."""
    if not W >= 1.0:
        raise RecoveryParameterError(f"W must be >= 1, got {W}")

    matrix = as_dense_matrix(a)
    n = matrix.shape[1]
    if not 0 <= k_strong <= n:
        raise RecoveryParameterError(f"require 0 <= k_strong <= n, got k_strong={k_strong}, n={n}")

    first = solve_weighted_l1(matrix, y, encoding=encoding, config=config)
    selected = select_top_k(first.estimate, k_strong)
    weights = WeightVector.two_level(n, selected, inner_weight=1.0, outer_weight=W)
    second = solve_weighted_l1(matrix, y, weights.weights, encoding=encoding, config=config)
    logger.debug("two-stage reweighting: |K'|=%d, W=%g", len(selected), W)

    return RecoveryResult(
        algorithm="modified",
        estimate=second.estimate,
        stage_estimates=[first.estimate, second.estimate],
        residual=second.residual,
        objective=second.objective,
        selected_set=selected,
        weights=weights,
        iterations=first.iterations + second.iterations,
    )


def run_algorithm(
    name: Algorithm,
    a: ArrayLike,
    y: ArrayLike,
    *,
    weights: ArrayLike | None = None,
    eps_prime: float = DEFAULT_EPS_PRIME,
    t_max: int = DEFAULT_T_MAX,
    k_strong: int | None = None,
    W: float = DEFAULT_W,
    encoding: L1Encoding = "split",
    config: SimplexConfig | None = None,
) -> RecoveryResult:
    """Dispatch a recovery algorithm by name."""
    if name == "l1":
        return recover_l1(a, y, encoding=encoding, config=config)
    if name == "weighted":
        if weights is None:
            raise RecoveryParameterError("algorithm 'weighted' requires weights")
        return recover_weighted(a, y, weights, encoding=encoding, config=config)
    if name == "candes":
        return reweight_candes(a, y, eps_prime, t_max, encoding=encoding, config=config)
    if name == "modified":
        if k_strong is None:
            raise RecoveryParameterError("algorithm 'modified' requires k_strong")
        return reweight_modified(a, y, k_strong, W, encoding=encoding, config=config)
    raise UnknownAlgorithmError(
        f"unknown algorithm '{name}'. Expected one of: {', '.join(ALGORITHMS)}"
    )
