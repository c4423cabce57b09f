import numpy as np
import pytest

from reweightpack.numcore import (
    IndexOutOfRangeError,
    InvalidDimensionsError,
    InvalidSeedError,
    NonFiniteError,
    RankDeficientError,
    as_dense_matrix,
    as_index_set,
    complement,
    default_rng,
    derive_seed,
    null_space_basis,
    numerical_rank,
    require_full_row_rank,
    sample_gaussian_matrix,
    sample_measurement_matrix,
    sample_sign_vector,
)
from reweightpack.numcore.arrays import l1_norm, restricted_l1, support


def test_gaussian_matrix_is_deterministic_per_seed() -> None:
    first = sample_gaussian_matrix(3, 7, seed=11)
    second = sample_gaussian_matrix(3, 7, seed=11)
    other = sample_gaussian_matrix(3, 7, seed=12)

    assert first.shape == (3, 7)
    assert first.dtype == np.float64
    assert np.array_equal(first, second)
    assert not np.array_equal(first, other)


def test_gaussian_matrix_entries_are_standard_normal() -> None:
    entries = sample_gaussian_matrix(100, 200, seed=3)

    assert -0.05 <= float(entries.mean()) <= 0.05
    assert 0.9 <= float(entries.var()) <= 1.1


@pytest.mark.parametrize(("m", "n"), [(0, 5), (5, 5), (6, 5)])
def test_gaussian_matrix_rejects_invalid_shapes(m: int, n: int) -> None:
    with pytest.raises(InvalidDimensionsError):
        sample_gaussian_matrix(m, n, seed=0)


def test_measurement_matrix_metadata_records_provenance() -> None:
    sampled = sample_measurement_matrix(2, 4, seed=5)

    assert sampled.metadata() == {
        "m": 2,
        "n": 4,
        "seed": 5,
        "distribution": "gaussian-iid-unit-variance",
    }


def test_derive_seed_is_stable_and_key_sensitive() -> None:
    assert derive_seed(7, 1, 2) == derive_seed(7, 1, 2)
    assert derive_seed(7, 1, 2) != derive_seed(7, 2, 1)
    assert derive_seed(7, 0) != derive_seed(8, 0)
    assert 0 <= derive_seed(7, 3) < 2**64


def test_null_space_basis_is_orthonormal_and_annihilated() -> None:
    a = sample_gaussian_matrix(4, 9, seed=3)
    basis = null_space_basis(a)

    assert basis.shape == (9, 5)
    assert np.allclose(a @ basis, 0.0, atol=1e-10)
    assert np.allclose(basis.T @ basis, np.eye(5), atol=1e-10)


def test_rank_deficient_matrix_is_rejected() -> None:
    a = np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]])

    assert numerical_rank(a) == 1
    with pytest.raises(RankDeficientError):
        require_full_row_rank(a)
    with pytest.raises(RankDeficientError):
        null_space_basis(a)


def test_non_finite_entries_are_rejected() -> None:
    with pytest.raises(NonFiniteError):
        as_dense_matrix([[1.0, float("nan")]])
    with pytest.raises(InvalidDimensionsError):
        as_dense_matrix([1.0, 2.0])


def test_index_sets_are_sorted_unique_and_bounded() -> None:
    assert as_index_set([3, 1, 3], 5) == (1, 3)
    assert complement([1, 3], 5) == (0, 2, 4)
    with pytest.raises(IndexOutOfRangeError):
        as_index_set([5], 5)
    with pytest.raises(IndexOutOfRangeError):
        as_index_set([-1], 5)


def test_norm_helpers() -> None:
    v = np.array([1.0, -2.0, 0.0, 0.5])

    assert l1_norm(v) == pytest.approx(3.5)
    assert restricted_l1(v, [1, 3]) == pytest.approx(2.5)
    assert restricted_l1(v, []) == 0.0
    assert support(v) == (0, 1, 3)


def test_sign_vector_is_plus_minus_one_and_seeded() -> None:
    first = sample_sign_vector(default_rng(8), 50)
    second = sample_sign_vector(default_rng(8), 50)

    assert set(first.tolist()) <= {-1.0, 1.0}
    assert np.array_equal(first, second)


@pytest.mark.parametrize("seed", [-1, 1 << 64])
def test_seeds_outside_64_bits_are_rejected(seed: int) -> None:
    with pytest.raises(InvalidSeedError):
        sample_gaussian_matrix(2, 4, seed=seed)
