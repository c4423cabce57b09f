"""Seeded sampling on a counter-based bit generator."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from reweightpack.numcore.arrays import DenseMatrix, as_dense_matrix
from reweightpack.numcore.exceptions import InvalidDimensionsError, InvalidSeedError

SEED_MASK = (1 << 64) - 1
GAUSSIAN_DISTRIBUTION = "gaussian-iid-unit-variance"


def normalize_seed(seed: int) -> int:
    value = int(seed)
    if value < 0 or value > SEED_MASK:
        raise InvalidSeedError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return value


def default_rng(seed: int) -> np.random.Generator:
    """Philox-backed generator; streams depend only on the seed."""
    return np.random.Generator(np.random.Philox(normalize_seed(seed)))


def derive_seed(master: int, *keys: int) -> int:
    """Deterministic 64-bit child seed for the key path under `master`."""
    entropy = [normalize_seed(master), *(int(key) for key in keys)]
    words = np.random.SeedSequence(entropy).generate_state(2, dtype=np.uint32)
    return (int(words[0]) << 32) | int(words[1])


@dataclass(frozen=True, slots=True)
class MeasurementMatrix:
    """Dense measurement matrix with its sampling provenance."""

    matrix: DenseMatrix = field(repr=False)
    seed: int
    distribution: str = GAUSSIAN_DISTRIBUTION

    @property
    def rows(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def cols(self) -> int:
        return int(self.matrix.shape[1])

    def metadata(self) -> dict[str, Any]:
        return {
            "m": self.rows,
            "n": self.cols,
            "seed": self.seed,
            "distribution": self.distribution,
        }


def sample_gaussian_matrix(m: int, n: int, seed: int) -> DenseMatrix:
    """m x n matrix with i.i.d. N(0, 1) entries, deterministic given seed."""
    if m < 1 or m >= n:
        raise InvalidDimensionsError(f"require 1 <= m < n, got m={m}, n={n}")
    rng = default_rng(seed)
    return as_dense_matrix(rng.standard_normal((m, n)))


def sample_measurement_matrix(m: int, n: int, seed: int) -> MeasurementMatrix:
    return MeasurementMatrix(matrix=sample_gaussian_matrix(m, n, seed), seed=normalize_seed(seed))


def sample_sign_vector(rng: np.random.Generator, size: int) -> np.ndarray:
    """Independent +/-1 entries drawn from `rng`."""
    return rng.choice(np.array([-1.0, 1.0]), size=size)
