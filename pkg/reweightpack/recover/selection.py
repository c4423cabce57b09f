"""Top-k support selection."""

from __future__ import annotations

from typing import Iterable

import numpy as np
from numpy.typing import ArrayLike

from reweightpack.numcore import IndexSet, InvalidDimensionsError, as_dense_vector, as_index_set


def select_top_k(v: ArrayLike, k: int) -> IndexSet:
    """Indices of the k largest |v_i|; ties go to the smaller index."""
    vector = as_dense_vector(v)
    n = vector.shape[0]
    if not 0 <= k <= n:
        raise InvalidDimensionsError(f"require 0 <= k <= n, got k={k}, n={n}")
    # stable sort on -|v| keeps equal magnitudes in index order
    order = np.argsort(-np.abs(vector), kind="stable")
    return tuple(sorted(int(i) for i in order[:k]))


def support_overlap(selected: Iterable[int], support: Iterable[int], n: int) -> tuple[int, int]:
    """(hits, misses): selected indices inside the support and outside it."""
    chosen = set(as_index_set(selected, n))
    truth = set(as_index_set(support, n))
    hits = len(chosen & truth)
    return hits, len(chosen) - hits
