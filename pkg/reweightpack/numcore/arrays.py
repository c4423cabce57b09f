"""Dense vector/matrix validation and norm helpers."""

from __future__ import annotations

from typing import Iterable, TypeAlias

import numpy as np
from numpy.typing import ArrayLike, NDArray

from reweightpack.numcore.exceptions import (
    IndexOutOfRangeError,
    InvalidDimensionsError,
    NonFiniteError,
)

DenseMatrix: TypeAlias = NDArray[np.float64]
DenseVector: TypeAlias = NDArray[np.float64]
IndexSet: TypeAlias = tuple[int, ...]


def as_dense_matrix(value: ArrayLike) -> DenseMatrix:
    """Return a finite, C-ordered float64 2-D array."""
    matrix = np.array(value, dtype=np.float64, order="C")
    if matrix.ndim != 2:
        raise InvalidDimensionsError(f"expected a 2-D matrix, got {matrix.ndim}-D input")
    if not np.all(np.isfinite(matrix)):
        raise NonFiniteError("matrix entries must be finite")
    return matrix


def as_dense_vector(value: ArrayLike, *, length: int | None = None) -> DenseVector:
    """Return a finite float64 1-D array, optionally checking its length."""
    vector = np.array(value, dtype=np.float64).reshape(-1)
    if length is not None and vector.shape[0] != length:
        raise InvalidDimensionsError(
            f"expected a vector of length {length}, got {vector.shape[0]}"
        )
    if not np.all(np.isfinite(vector)):
        raise NonFiniteError("vector entries must be finite")
    return vector


def as_index_set(indices: Iterable[int], n: int) -> IndexSet:
    """Normalize an index collection to a sorted tuple of unique in-range indices."""
    normalized = tuple(sorted({int(index) for index in indices}))
    if normalized and (normalized[0] < 0 or normalized[-1] >= n):
        raise IndexOutOfRangeError(
            f"index set {list(normalized)} is outside range [0, {n})"
        )
    return normalized


def complement(indices: Iterable[int], n: int) -> IndexSet:
    members = set(as_index_set(indices, n))
    return tuple(index for index in range(n) if index not in members)


def l1_norm(v: ArrayLike) -> float:
    vector = as_dense_vector(v)
    return float(np.sum(np.abs(vector)))


def restricted_l1(v: ArrayLike, indices: Iterable[int]) -> float:
    """l1 norm of `v` over the index set `indices`."""
    vector = as_dense_vector(v)
    selected = as_index_set(indices, vector.shape[0])
    if not selected:
        return 0.0
    return float(np.sum(np.abs(vector[list(selected)])))


def max_abs(value: ArrayLike) -> float:
    array = np.asarray(value, dtype=np.float64)
    if array.size == 0:
        return 0.0
    return float(np.max(np.abs(array)))


def support(v: ArrayLike, *, tol: float = 0.0) -> IndexSet:
    vector = as_dense_vector(v)
    return tuple(int(index) for index in np.flatnonzero(np.abs(vector) > tol))
