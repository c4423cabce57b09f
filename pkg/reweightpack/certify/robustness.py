"""Weak-robustness inequality check and the best constant C.

For fixed (A, K, x_K) and C > 1 the inequality

    ||x_K + w_K||_1 + ||w_Kbar||_1 / C >= ||x_K||_1   for all w with A w = 0

is checked by minimizing the convex piecewise-linear left-minus-right side over
the l1 ball of radius R = 10 (1 + ||x_K||_1) C intersected with the null space.
"""

from __future__ import annotations

import logging
import math
from typing import Iterable

import numpy as np
from numpy.typing import ArrayLike

from reweightpack.certify.exceptions import BoundParameterError, CertifyError, SetTooLargeError
from reweightpack.certify.kappa import MAX_EXACT_SET_SIZE, compute_kappa
from reweightpack.certify.models import BEST_C_FAILURE, RobustnessCertificate, RobustnessCheck
from reweightpack.lp import LpProblem, SimplexConfig, solve_lp
from reweightpack.numcore import as_dense_vector, as_index_set, require_full_row_rank

logger = logging.getLogger(__name__)

HOLDS_TOLERANCE = 1e-8
C_FLOOR = 1.0 + 1e-3
C_CEILING = 1e6
C_RESOLUTION = 1e-3


def check_weak_robustness(
    a: ArrayLike,
    K: Iterable[int],
    x_K: ArrayLike,
    C: float,
    *,
    config: SimplexConfig | None = None,
) -> RobustnessCheck:
    """Minimum of the inequality's slack; holds iff that minimum >= -1e-8.

    The slack is zero at w = 0, so the reported margin is never positive.
    """
    if not C > 1.0:
        raise BoundParameterError(f"C must exceed 1, got {C}")
    matrix = require_full_row_rank(a)
    m, n = matrix.shape
    strong = list(as_index_set(K, n))
    x_strong = as_dense_vector(x_K, length=len(strong))
    if not strong:
        return RobustnessCheck(holds=True, margin=0.0, C=float(C))

    k = len(strong)
    x_norm = float(np.sum(np.abs(x_strong)))
    radius = 10.0 * (1.0 + x_norm) * C

    # variables: p (n), q (n), e_plus (k), e_minus (k), slack (1); w = p - q
    size = 2 * n + 2 * k + 1
    eq_matrix = np.zeros((m + k + 1, size))
    eq_rhs = np.zeros(m + k + 1)
    eq_matrix[:m, :n] = matrix
    eq_matrix[:m, n : 2 * n] = -matrix
    for row, index in enumerate(strong):
        # w_i - e_plus + e_minus = -x_i, so e_plus - e_minus = x_i + w_i
        eq_matrix[m + row, index] = 1.0
        eq_matrix[m + row, n + index] = -1.0
        eq_matrix[m + row, 2 * n + row] = -1.0
        eq_matrix[m + row, 2 * n + k + row] = 1.0
        eq_rhs[m + row] = -x_strong[row]
    eq_matrix[m + k, : 2 * n] = 1.0
    eq_matrix[m + k, size - 1] = 1.0
    eq_rhs[m + k] = radius

    objective = np.zeros(size)
    objective[: 2 * n] = 1.0 / C
    objective[strong] = 0.0
    objective[[n + i for i in strong]] = 0.0
    objective[2 * n : 2 * n + 2 * k] = 1.0

    solution = solve_lp(LpProblem.build(objective, eq_matrix=eq_matrix, eq_rhs=eq_rhs), config=config)
    if not solution.optimal:
        raise CertifyError(f"robustness LP reported {solution.status}")
    margin = min(solution.objective_value - x_norm, 0.0)
    return RobustnessCheck(holds=margin >= -HOLDS_TOLERANCE, margin=margin, C=float(C))


def estimate_best_C(
    a: ArrayLike,
    K: Iterable[int],
    x_K: ArrayLike,
    *,
    config: SimplexConfig | None = None,
) -> float:
    """Largest C in (1, 1e6] within 1e-3 for which the inequality holds.

    Returns +inf when it holds at the ceiling and 1.0 when it already fails at
    1 + 1e-3; the inequality only gets weaker as C decreases, so bisection
    applies.
    """
    strong = as_index_set(K, np.shape(a)[1])
    if not strong:
        return math.inf
    if check_weak_robustness(a, strong, x_K, C_CEILING, config=config).holds:
        return math.inf
    if not check_weak_robustness(a, strong, x_K, C_FLOOR, config=config).holds:
        return BEST_C_FAILURE

    low, high = C_FLOOR, C_CEILING
    while high - low > C_RESOLUTION:
        middle = 0.5 * (low + high)
        if check_weak_robustness(a, strong, x_K, middle, config=config).holds:
            low = middle
        else:
            high = middle
    logger.debug("best C bracketed in [%.6g, %.6g]", low, high)
    return low


def certificate(
    a: ArrayLike,
    K: Iterable[int],
    x_K: ArrayLike,
    *,
    config: SimplexConfig | None = None,
) -> RobustnessCertificate:
    """kappa, best C and the margin at best C for one instance.

    Sets beyond the exact-enumeration limit get kappa = +inf and method
    `convex-minimization`: only the inequality check is available for them.
    """
    matrix = require_full_row_rank(a)
    strong = as_index_set(K, matrix.shape[1])
    try:
        kappa = compute_kappa(matrix, strong, config=config)
        method = "exact-enumeration"
    except SetTooLargeError:
        logger.warning(
            "|K|=%d exceeds %d; kappa left unbounded", len(strong), MAX_EXACT_SET_SIZE
        )
        kappa = math.inf
        method = "convex-minimization"

    best_C = estimate_best_C(matrix, strong, x_K, config=config)
    if not strong:
        margin = 0.0
    else:
        probe = C_CEILING if math.isinf(best_C) else max(best_C, C_FLOOR)
        margin = check_weak_robustness(matrix, strong, x_K, probe, config=config).margin
    return RobustnessCertificate(
        K=strong,
        kappa=kappa,
        best_C=best_C,
        margin=margin,
        method=method,
    )
