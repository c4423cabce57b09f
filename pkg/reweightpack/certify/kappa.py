"""Null-space ratio kappa = max ||w_K||_1 / ||w_Kbar||_1 over A w = 0."""

from __future__ import annotations

import itertools
import logging
import math
from typing import Iterable

import numpy as np
from numpy.typing import ArrayLike

from reweightpack.certify.exceptions import CertifyError, SetTooLargeError
from reweightpack.lp import LpProblem, SimplexConfig, solve_lp
from reweightpack.numcore import (
    as_index_set,
    complement,
    default_rng,
    null_space_basis,
    require_full_row_rank,
)

logger = logging.getLogger(__name__)

MAX_EXACT_SET_SIZE = 16


def compute_kappa(
    a: ArrayLike,
    K: Iterable[int],
    *,
    config: SimplexConfig | None = None,
    max_set_size: int = MAX_EXACT_SET_SIZE,
) -> float:
    """Exact kappa by one LP per sign pattern of w_K.

    For a fixed sign vector s, max s^T w_K over {A w = 0, ||w_Kbar||_1 <= 1}
    is an LP; the largest value over all patterns is kappa. Patterns come in
    +/- pairs with equal value, so only those with s_0 = +1 are solved.
    Returns +inf if any pattern is unbounded.
    """
    matrix = require_full_row_rank(a)
    m, n = matrix.shape
    strong = as_index_set(K, n)
    if not strong:
        return 0.0
    if len(strong) > max_set_size:
        raise SetTooLargeError(
            f"exact kappa enumerates 2^|K| patterns; |K|={len(strong)} exceeds {max_set_size}"
        )
    weak = complement(strong, n)
    a_strong = matrix[:, list(strong)]
    a_weak = matrix[:, list(weak)]
    k, r = len(strong), len(weak)

    # variables: w_K (free), p, q >= 0 with w_Kbar = p - q, slack >= 0
    eq_matrix = np.zeros((m + 1, k + 2 * r + 1))
    eq_matrix[:m, :k] = a_strong
    eq_matrix[:m, k : k + r] = a_weak
    eq_matrix[:m, k + r : k + 2 * r] = -a_weak
    eq_matrix[m, k:] = 1.0
    eq_rhs = np.zeros(m + 1)
    eq_rhs[m] = 1.0
    lower = np.concatenate([np.full(k, -np.inf), np.zeros(2 * r + 1)])

    best = 0.0
    for tail in itertools.product((1.0, -1.0), repeat=k - 1):
        signs = np.array((1.0, *tail))
        objective = np.concatenate([-signs, np.zeros(2 * r + 1)])
        problem = LpProblem.build(objective, eq_matrix=eq_matrix, eq_rhs=eq_rhs, lower=lower)
        solution = solve_lp(problem, config=config)
        if solution.status == "unbounded":
            logger.debug("kappa pattern %s unbounded; columns on K are dependent", signs)
            return math.inf
        if solution.status != "optimal":
            raise CertifyError(f"kappa pattern LP reported {solution.status}")
        best = max(best, -solution.objective_value)
    return float(best)


def estimate_kappa_grid(
    a: ArrayLike,
    K: Iterable[int],
    points: int = 20000,
    *,
    seed: int = 0,
    refine_steps: int = 200,
) -> float:
    """Lower bound on kappa from a dense search over the null-space unit sphere.

    Directions are an even angular grid for 2-D null spaces, a Fibonacci
    lattice for 3-D ones and Gaussian samples beyond that; the best direction
    is then polished by a shrinking-step local search.
    """
    matrix = require_full_row_rank(a)
    n = matrix.shape[1]
    strong = as_index_set(K, n)
    if not strong:
        return 0.0
    basis = null_space_basis(matrix)
    dim = basis.shape[1]
    if dim == 0:
        return 0.0
    weak = list(complement(strong, n))
    strong_list = list(strong)

    def ratios(directions: np.ndarray) -> np.ndarray:
        w = directions @ basis.T
        numerator = np.sum(np.abs(w[:, strong_list]), axis=1)
        denominator = np.sum(np.abs(w[:, weak]), axis=1) if weak else np.zeros(len(w))
        value = np.full(len(w), np.inf)
        positive = denominator > 0.0
        value[positive] = numerator[positive] / denominator[positive]
        value[numerator == 0.0] = 0.0
        return value

    directions = _sphere_directions(dim, points, seed)
    values = ratios(directions)
    index = int(np.argmax(values))
    best_value = float(values[index])
    if not math.isfinite(best_value):
        return math.inf
    best_direction = directions[index]

    rng = default_rng(seed)
    step = math.pi / max(points ** (1.0 / max(dim - 1, 1)), 1.0)
    for _ in range(refine_steps):
        if dim == 1:
            break
        candidates = best_direction + step * rng.standard_normal((4 * dim, dim))
        candidates /= np.linalg.norm(candidates, axis=1, keepdims=True)
        candidate_values = ratios(candidates)
        top = int(np.argmax(candidate_values))
        if candidate_values[top] > best_value:
            best_value = float(candidate_values[top])
            best_direction = candidates[top]
        else:
            step *= 0.7
    return best_value


def _sphere_directions(dim: int, points: int, seed: int) -> np.ndarray:
    if dim == 1:
        return np.array([[1.0]])
    if dim == 2:
        # half circle suffices: the ratio is even in w
        angles = np.linspace(0.0, math.pi, points, endpoint=False)
        return np.column_stack([np.cos(angles), np.sin(angles)])
    if dim == 3:
        index = np.arange(points) + 0.5
        polar = np.arccos(1.0 - 2.0 * index / points)
        azimuth = math.pi * (1.0 + math.sqrt(5.0)) * index
        return np.column_stack(
            [np.cos(azimuth) * np.sin(polar), np.sin(azimuth) * np.sin(polar), np.cos(polar)]
        )
    samples = default_rng(seed).standard_normal((points, dim))
    return samples / np.linalg.norm(samples, axis=1, keepdims=True)
