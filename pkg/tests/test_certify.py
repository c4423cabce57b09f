import math

import numpy as np
import pytest

from reweightpack.certify import (
    BEST_C_FAILURE,
    BoundParameterError,
    SetTooLargeError,
    certificate,
    check_weak_robustness,
    compute_kappa,
    estimate_best_C,
    estimate_kappa_grid,
    max_tail_for_p1,
    p1_lower_bound,
    p2_upper_bound,
    recovery_error_bound,
    strong_hits_lower_bound,
    support_error_bound,
)
from reweightpack.numcore import sample_gaussian_matrix
from reweightpack.recover import reweight_modified, support_overlap
from reweightpack.signals import generate_model_signal


def test_kappa_of_single_row_matrices() -> None:
    assert compute_kappa(np.array([[1.0, 1.0]]), [0]) == pytest.approx(1.0, abs=1e-9)
    assert compute_kappa(np.array([[1.0, 2.0]]), [0]) == pytest.approx(2.0, abs=1e-9)
    assert compute_kappa(np.array([[1.0, 2.0]]), []) == 0.0


def test_kappa_is_infinite_when_columns_on_K_are_dependent() -> None:
    a = np.array([[1.0, 1.0, 0.0, 1.0], [0.0, 0.0, 1.0, 1.0]])

    assert math.isinf(compute_kappa(a, [0, 1]))


def test_kappa_is_scale_invariant() -> None:
    a = sample_gaussian_matrix(4, 8, seed=3)

    assert compute_kappa(-3.5 * a, [1, 5]) == pytest.approx(compute_kappa(a, [1, 5]), abs=1e-9)


@pytest.mark.parametrize("seed", range(4))
def test_grid_search_is_a_tight_lower_bound_on_kappa(seed: int) -> None:
    m, n = (7, 10) if seed % 2 == 0 else (8, 10)
    a = sample_gaussian_matrix(m, n, seed=seed)
    K = [0, 4]

    exact = compute_kappa(a, K)
    grid = estimate_kappa_grid(a, K, points=20000, seed=seed)

    assert grid <= exact + 1e-9
    assert grid >= 0.98 * exact


def test_kappa_rejects_oversized_sets() -> None:
    a = sample_gaussian_matrix(10, 20, seed=0)
    with pytest.raises(SetTooLargeError):
        compute_kappa(a, range(5), max_set_size=4)


def test_robustness_with_empty_set_always_holds() -> None:
    check = check_weak_robustness(np.array([[1.0, 1.0]]), [], [], 2.0)

    assert check.holds
    assert check.margin == 0.0


def test_robustness_fails_for_hand_checked_direction() -> None:
    check = check_weak_robustness(np.array([[1.0, 1.0]]), [0], [5.0], 2.0)

    assert not check.holds
    assert check.margin == pytest.approx(-2.5, abs=1e-7)


def test_best_c_failure_marker_and_infinite_ceiling() -> None:
    a = np.array([[1.0, 1.0]])

    assert estimate_best_C(a, [0], [5.0]) == BEST_C_FAILURE
    assert math.isinf(estimate_best_C(a, [], []))


def test_robustness_check_rejects_c_at_most_one() -> None:
    with pytest.raises(BoundParameterError):
        check_weak_robustness(np.array([[1.0, 1.0]]), [0], [1.0], 1.0)


@pytest.mark.parametrize("seed", range(10))
def test_single_entry_robustness_matches_kappa_threshold(seed: int) -> None:
    # for a single strong entry the inequality holds exactly when kappa <= 1/C
    a = sample_gaussian_matrix(6, 12, seed=seed)
    index = seed % 12

    check = check_weak_robustness(a, [index], [1.0], 1.5)

    assert check.holds == (compute_kappa(a, [index]) <= 1.0 / 1.5)


def test_best_c_brackets_the_largest_holding_constant() -> None:
    x_K = np.array([1.3, -0.8])
    above_one = 0
    for seed in range(5):
        a = sample_gaussian_matrix(10, 20, seed=seed)
        best = estimate_best_C(a, [2, 9], x_K)
        if best <= 1.0:
            continue
        above_one += 1
        if math.isfinite(best):
            assert check_weak_robustness(a, [2, 9], x_K, best).holds
            assert not check_weak_robustness(a, [2, 9], x_K, best + 2e-3).holds

    assert above_one >= 3


def test_certificate_fields_and_large_set_fallback() -> None:
    a = sample_gaussian_matrix(10, 20, seed=1)
    cert = certificate(a, [0, 3], [1.0, -1.0])

    assert cert.method == "exact-enumeration"
    assert cert.margin <= 0.0
    assert cert.to_dict()["certified"] == cert.certified

    wide = sample_gaussian_matrix(19, 20, seed=1)
    fallback = certificate(wide, range(17), np.ones(17))
    assert fallback.method == "convex-minimization"
    assert math.isinf(fallback.kappa)
    assert not fallback.certified


def test_recovery_error_bound_formula() -> None:
    assert recovery_error_bound(3.0, 1.0, 0.0) == 0.0
    assert recovery_error_bound(3.0, 1.0, 0.1) == pytest.approx(0.6)
    assert recovery_error_bound(1.0001, 0.0, 1.0) == pytest.approx(20002.0, rel=1e-9)
    with pytest.raises(BoundParameterError):
        recovery_error_bound(1.0, 0.0, 1.0)


def test_support_error_bound_formula_and_limit() -> None:
    assert support_error_bound(3.0, 1.0, 1.0, 0.1).value == pytest.approx(1.2)
    assert support_error_bound(3.0, 1.0, 1.0, 0.0).value == 0.0
    assert support_error_bound(1e6, 0.0, 2.0, 0.5).value == pytest.approx(1.0, rel=1e-5)
    with pytest.raises(BoundParameterError):
        support_error_bound(3.0, 1.0, 0.0, 0.1)


def test_strong_hits_lower_bound_subtracts_support_bound() -> None:
    assert strong_hits_lower_bound(10, 3.0, 1.0, 1.0, 0.1) == pytest.approx(8.8)


def test_probability_bounds() -> None:
    assert p1_lower_bound(3.0, 1.0, 1.0, 0.0, 0.2, 0.5, 1000).value == 1.0
    bound = p1_lower_bound(3.0, 1.0, 1.0, 1.0, 0.2, 0.5, 1000)
    assert bound.value == pytest.approx(0.88)
    assert not bound.clamped

    # k_total equal to the selected block cancels the numerator
    p2 = p2_upper_bound(90, 0.1, 0.2, 0.5, 1000, 3.0, 1.0, 1.0, 0.0)
    assert p2.value == pytest.approx(0.0, abs=1e-12)


def test_probability_bound_clamping_is_reported() -> None:
    bound = p1_lower_bound(1.001, 5.0, 0.1, 10.0, 0.2, 0.5, 100)

    assert bound.clamped
    assert bound.value == 0.0
    assert bound.raw < 0.0


def test_max_tail_for_p1_inverts_the_p1_bound() -> None:
    tail = max_tail_for_p1(0.9, 3.0, 1.0, 1.0, 0.2, 0.5, 1000)

    assert p1_lower_bound(3.0, 1.0, 1.0, tail, 0.2, 0.5, 1000).value == pytest.approx(0.9)


def test_support_bound_holds_on_certified_instance() -> None:
    checked = 0
    for seed in range(8):
        a = sample_gaussian_matrix(24, 40, seed=seed)
        signal = generate_model_signal(40, 3, 1.0, 0.05, 6, seed=seed + 50)
        cert = certificate(a, signal.strong_set, signal.x[list(signal.strong_set)])
        if not cert.certified:
            continue
        checked += 1
        result = reweight_modified(a, a @ signal.x, k_strong=3)
        _, false_selections = support_overlap(result.selected_set, signal.support, signal.n)
        c_value = min(cert.best_C, 1e6)
        bound = support_error_bound(c_value, cert.kappa, 1.0, signal.tail_l1)
        assert false_selections <= bound.value + 1e-6
        l1_gap = float(np.sum(np.abs(result.stage_estimates[0] - signal.x)))
        assert l1_gap <= recovery_error_bound(c_value, cert.kappa, signal.tail_l1) + 1e-6

    assert checked >= 1
