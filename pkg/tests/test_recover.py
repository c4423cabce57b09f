import numpy as np
import pytest

from reweightpack.lp import NonPositiveWeightError
from reweightpack.numcore import InvalidDimensionsError, sample_gaussian_matrix
from reweightpack.recover import (
    RecoveryParameterError,
    UnknownAlgorithmError,
    WeightVector,
    recover_l1,
    recover_weighted,
    candes_weights,
    reweight_candes,
    reweight_modified,
    run_algorithm,
    select_top_k,
    support_overlap,
)
from reweightpack.recover.models import l1_error, relative_l2_error
from reweightpack.signals import gaussian_sparse_signal, generate_model_signal


def _sparse_instance(m: int = 20, n: int = 40, k: int = 3, seed: int = 1) -> tuple[np.ndarray, np.ndarray]:
    a = sample_gaussian_matrix(m, n, seed=seed)
    x = gaussian_sparse_signal(n, k, seed=seed + 100).x
    return a, x


def test_select_top_k_breaks_ties_by_index() -> None:
    assert select_top_k([0.5, -2.0, 0.5, 1.0, 0.5], 3) == (0, 1, 3)
    assert select_top_k([1.0, 1.0, 1.0], 2) == (0, 1)
    assert select_top_k([3.0, 1.0], 0) == ()
    with pytest.raises(InvalidDimensionsError):
        select_top_k([1.0, 2.0], 3)


def test_support_overlap_counts_hits_and_misses() -> None:
    assert support_overlap([0, 2, 5], [2, 3, 5], 6) == (2, 1)


def test_weight_vector_validation_and_two_level_layout() -> None:
    weights = WeightVector.two_level(5, (1, 3), inner_weight=1.0, outer_weight=10.0)

    assert weights.weights.tolist() == [10.0, 1.0, 10.0, 1.0, 10.0]
    with pytest.raises(NonPositiveWeightError):
        WeightVector(np.array([1.0, -1.0]))


def test_error_metrics() -> None:
    x = np.array([1.0, 0.0, -1.0])
    estimate = np.array([1.0, 0.1, -1.0])

    assert l1_error(estimate, x) == pytest.approx(0.1)
    assert relative_l2_error(estimate, x) == pytest.approx(0.1 / np.sqrt(2.0))
    assert relative_l2_error(np.zeros(3), np.zeros(3)) == 0.0


def test_plain_l1_recovers_sparse_signal() -> None:
    a, x = _sparse_instance()
    result = recover_l1(a, a @ x)

    assert result.algorithm == "l1"
    assert result.stages == 1
    assert result.success_vs(x)
    assert result.residual <= 1e-7


def test_weighted_l1_with_unit_weights_matches_plain_l1() -> None:
    a, x = _sparse_instance(seed=3)
    plain = recover_l1(a, a @ x)
    weighted = recover_weighted(a, a @ x, np.ones(40))

    assert weighted.algorithm == "weighted"
    assert weighted.objective == pytest.approx(plain.objective, rel=1e-9)


def test_candes_without_reweighting_is_plain_l1() -> None:
    a, x = _sparse_instance(seed=5)
    plain = recover_l1(a, a @ x)
    reweighted = reweight_candes(a, a @ x, eps_prime=0.1, t_max=0)

    assert reweighted.stages == 1
    assert np.allclose(reweighted.estimate, plain.estimate, atol=1e-9)
    assert reweighted.converged is False


def test_candes_stays_at_an_exactly_recovered_signal() -> None:
    a, x = _sparse_instance()
    result = reweight_candes(a, a @ x, eps_prime=0.1, t_max=4)

    assert result.converged is True
    assert result.stages == 2
    for stage in result.stage_estimates:
        assert np.allclose(stage, x, atol=1e-6)


def test_candes_weights_favor_larger_entries() -> None:
    weights = candes_weights([0.0, -0.5, 2.0], eps_prime=0.1).weights

    assert weights[0] == pytest.approx(10.0)
    assert weights[2] < weights[1] < weights[0]
    with pytest.raises(RecoveryParameterError):
        candes_weights([1.0], eps_prime=0.0)


def test_candes_runs_at_most_t_max_plus_one_solves() -> None:
    a, x = _sparse_instance(m=12, n=30, k=5, seed=7)
    result = reweight_candes(a, a @ x, eps_prime=0.1, t_max=4)

    assert 1 <= result.stages <= 5
    assert result.algorithm == "candes"
    if result.converged:
        assert np.max(np.abs(result.stage_estimates[-1] - result.stage_estimates[-2])) <= 1e-9


def test_candes_rejects_invalid_parameters() -> None:
    a, x = _sparse_instance()
    with pytest.raises(RecoveryParameterError):
        reweight_candes(a, a @ x, eps_prime=0.0)
    with pytest.raises(RecoveryParameterError):
        reweight_candes(a, a @ x, t_max=-1)


def test_modified_reweighting_keeps_stage_history_and_block() -> None:
    a = sample_gaussian_matrix(25, 50, seed=2)
    signal = generate_model_signal(50, 4, 1.0, 0.05, 8, seed=9)
    result = reweight_modified(a, a @ signal.x, k_strong=4, W=10.0)

    assert result.algorithm == "modified"
    assert result.stages == 2
    assert len(result.selected_set) == 4
    assert result.weights is not None
    inside = result.weights.weights[list(result.selected_set)]
    assert np.all(inside == 1.0)
    assert np.count_nonzero(result.weights.weights == 10.0) == 46


def test_modified_reweighting_with_unit_weight_is_plain_l1() -> None:
    a, x = _sparse_instance(seed=4)
    plain = recover_l1(a, a @ x)
    result = reweight_modified(a, a @ x, k_strong=2, W=1.0)

    assert result.objective == pytest.approx(plain.objective, rel=1e-9)


def test_modified_reweighting_rejects_invalid_parameters() -> None:
    a, x = _sparse_instance()
    with pytest.raises(RecoveryParameterError):
        reweight_modified(a, a @ x, k_strong=2, W=0.5)
    with pytest.raises(RecoveryParameterError):
        reweight_modified(a, a @ x, k_strong=41)


def test_run_algorithm_dispatch() -> None:
    a, x = _sparse_instance()
    y = a @ x

    assert run_algorithm("l1", a, y).algorithm == "l1"
    assert run_algorithm("candes", a, y, t_max=1).algorithm == "candes"
    assert run_algorithm("modified", a, y, k_strong=3).algorithm == "modified"
    assert run_algorithm("weighted", a, y, weights=np.ones(40)).algorithm == "weighted"
    with pytest.raises(RecoveryParameterError):
        run_algorithm("weighted", a, y)
    with pytest.raises(RecoveryParameterError):
        run_algorithm("modified", a, y)
    with pytest.raises(UnknownAlgorithmError):
        run_algorithm("lasso", a, y)  # type: ignore[arg-type]


def test_recovery_result_to_dict_is_json_ready() -> None:
    a, x = _sparse_instance()
    payload = run_algorithm("modified", a, a @ x, k_strong=3).to_dict()

    assert payload["algorithm"] == "modified"
    assert len(payload["stage_estimates"]) == 2
    assert len(payload["selected_set"]) == 3
    assert isinstance(payload["estimate"], list)
