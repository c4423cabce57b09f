import numpy as np
import pytest
from scipy.special import expit

from reweightpack.lab import (
    CURVE_CSV_HEADER,
    CurvePoint,
    DegenerateFitError,
    build_curve,
    fit_logistic,
    isotonic_smooth,
    wilson_interval,
)


def test_wilson_interval_reference_values() -> None:
    low, high = wilson_interval(50, 100)
    assert low == pytest.approx(0.4038, abs=1e-4)
    assert high == pytest.approx(0.5962, abs=1e-4)

    low, high = wilson_interval(0, 10)
    assert low == 0.0
    assert high == pytest.approx(0.2775, abs=1e-4)


@pytest.mark.parametrize(("successes", "trials"), [(0, 1), (1, 1), (3, 7), (99, 100)])
def test_wilson_interval_contains_point_estimate(successes: int, trials: int) -> None:
    low, high = wilson_interval(successes, trials)

    assert 0.0 <= low <= successes / trials <= high <= 1.0


def test_wilson_interval_rejects_impossible_counts() -> None:
    with pytest.raises(ValueError):
        wilson_interval(5, 4)


def test_logistic_fit_recovers_known_midpoint() -> None:
    axis = np.linspace(0.0, 1.0, 11)
    trials = np.full(11, 200)
    successes = np.round(trials * expit(12.0 * (0.45 - axis))).astype(int)

    fit = fit_logistic(axis, successes, trials)

    assert fit.midpoint == pytest.approx(0.45, abs=0.01)
    assert fit.slope < 0.0
    assert fit.midpoint_se > 0.0
    assert fit.residual_deviance < fit.null_deviance
    low, high = fit.interval()
    assert low < fit.midpoint < high
    assert fit.predict([fit.midpoint])[0] == pytest.approx(0.5, abs=1e-9)


def test_logistic_fit_handles_perfect_separation() -> None:
    fit = fit_logistic([0.1, 0.2, 0.3, 0.4], [10, 10, 0, 0], [10, 10, 10, 10])

    assert 0.2 < fit.midpoint < 0.3


def test_logistic_fit_rejects_constant_success() -> None:
    with pytest.raises(DegenerateFitError):
        fit_logistic([0.1, 0.2, 0.3], [5, 5, 5], [5, 5, 5])
    with pytest.raises(DegenerateFitError):
        fit_logistic([0.1], [1], [2])


def test_isotonic_smoothing_enforces_direction() -> None:
    smoothed = isotonic_smooth([1.0, 0.8, 0.9, 0.2], [10, 10, 10, 10], increasing=False)

    assert np.all(np.diff(smoothed) <= 1e-12)
    assert smoothed[1] == pytest.approx(0.85)


def test_curve_point_to_dict_includes_extras() -> None:
    point = CurvePoint.from_counts(0.7, 3, 4, p2=0.25)
    payload = point.to_dict()

    assert payload["p_success"] == 0.75
    assert payload["p2"] == 0.25
    assert payload["ci_low"] <= 0.75 <= payload["ci_high"]


def test_build_curve_sorts_axis_and_fits() -> None:
    curve = build_curve(
        "rho",
        [0.5, 0.1, 0.3, 0.7],
        [2, 20, 15, 0],
        [20, 20, 20, 20],
        increasing=False,
    )

    assert curve.axis_values().tolist() == [0.1, 0.3, 0.5, 0.7]
    assert curve.threshold is not None
    assert 0.3 < curve.threshold < 0.5
    assert curve.require_fit().midpoint == curve.threshold
    assert curve.csv_header() == CURVE_CSV_HEADER
    assert curve.csv_rows()[0] == (0.1, 1.0, curve.points[0].ci_low, 1.0, 20)
    assert curve.to_dict()["threshold_ci"] is not None


def test_build_curve_without_required_fit_tolerates_flat_grid() -> None:
    curve = build_curve("p1", [0.5, 1.0], [4, 4], [4, 4], increasing=True, require_fit=False)

    assert curve.fit is None
    assert curve.threshold is None
    with pytest.raises(DegenerateFitError):
        curve.require_fit()
    with pytest.raises(DegenerateFitError):
        build_curve("p1", [0.5, 1.0], [4, 4], [4, 4], increasing=True)
