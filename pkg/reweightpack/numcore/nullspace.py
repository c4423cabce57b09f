"""Rank decisions and orthonormal null-space bases."""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from reweightpack.numcore.arrays import DenseMatrix, as_dense_matrix, max_abs
from reweightpack.numcore.exceptions import RankDeficientError

logger = logging.getLogger(__name__)

RANK_TOLERANCE = 1e-10


def numerical_rank(a: ArrayLike, *, tol: float = RANK_TOLERANCE) -> int:
    """Rank from column-pivoted QR: |R_ii| > tol * largest column norm."""
    matrix = as_dense_matrix(a)
    if matrix.size == 0:
        return 0
    _, r, _ = scipy.linalg.qr(matrix, mode="economic", pivoting=True)
    diagonal = np.abs(np.diag(r))
    if diagonal.size == 0 or diagonal[0] == 0.0:
        return 0
    # with pivoting, |R_00| is the largest column norm
    return int(np.count_nonzero(diagonal > tol * diagonal[0]))


def require_full_row_rank(a: ArrayLike) -> DenseMatrix:
    matrix = as_dense_matrix(a)
    rank = numerical_rank(matrix)
    if rank < matrix.shape[0]:
        raise RankDeficientError(
            f"matrix has numerical rank {rank} < {matrix.shape[0]} rows"
        )
    return matrix


def null_space_basis(a: ArrayLike) -> DenseMatrix:
    """n x (n - m) matrix with orthonormal columns spanning {w : A w = 0}."""
    matrix = require_full_row_rank(a)
    m, n = matrix.shape
    q, _ = scipy.linalg.qr(matrix.T, mode="full")
    basis = np.ascontiguousarray(q[:, m:])
    residual = max_abs(matrix @ basis)
    if residual > RANK_TOLERANCE * max(max_abs(matrix), 1.0):
        logger.warning("null-space residual %.3e exceeds tolerance", residual)
    return basis
