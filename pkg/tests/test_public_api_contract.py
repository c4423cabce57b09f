import inspect
import math

import numpy as np

import reweightkit
from reweightpack.numcore import sample_gaussian_matrix
from reweightpack.signals import generate_model_signal


def test_public_api_symbol_list_is_explicit_and_stable() -> None:
    assert reweightkit.__all__ == [
        "__version__",
        "RecoveryAlgorithm",
        "RecoveryResult",
        "RobustnessCertificate",
        "ThresholdCurve",
        "CampaignResult",
        "ComparisonResult",
        "recover",
        "kappa",
        "certify",
        "rho_threshold",
        "sparsity_sweep",
        "campaign",
        "compare",
    ]


def test_public_api_function_signatures_and_annotations() -> None:
    positional = {
        "recover": 2,
        "kappa": 2,
        "certify": 3,
        "rho_threshold": 1,
        "sparsity_sweep": 1,
        "campaign": 0,
        "compare": 0,
    }

    for name, positional_count in positional.items():
        function = getattr(reweightkit, name)
        signature = inspect.signature(function)
        assert "return" in function.__annotations__
        assert function.__doc__ is not None
        assert function.__doc__.strip() != ""

        for index, parameter in enumerate(signature.parameters.values()):
            if index < positional_count:
                assert parameter.kind is inspect.Parameter.POSITIONAL_OR_KEYWORD
            else:
                assert parameter.kind is inspect.Parameter.KEYWORD_ONLY


def test_core_workflow_works_via_public_api_only() -> None:
    a = sample_gaussian_matrix(24, 40, seed=11)
    signal = generate_model_signal(40, 3, 1.0, 0.0, 3, seed=12)
    y = a @ signal.x

    plain = reweightkit.recover(a, y)
    assert plain.success_vs(signal.x)

    modified = reweightkit.recover(a, y, algorithm="modified", k_strong=3)
    assert set(modified.selected_set) == set(signal.strong_set)

    value = reweightkit.kappa(a, signal.strong_set)
    assert value >= 0.0

    cert = reweightkit.certify(a, signal.x, signal.strong_set)
    assert cert.K == tuple(sorted(signal.strong_set))
    assert cert.kappa == value
    assert cert.certified == (cert.best_C > 1.001 and math.isfinite(cert.kappa))


def test_public_campaign_and_compare_run_small_configurations() -> None:
    result = reweightkit.campaign(n=20, m=12, instances=2, k_strong=2, k_total=4, seed=1)
    assert result.summary()["instances"] == 2

    comparison = reweightkit.compare(n=20, m=10, k=3, trials=2, amp_laws=("flat",), seed=2)
    assert [outcome.amp_law for outcome in comparison.outcomes] == ["flat"]
    assert np.isfinite(comparison.outcomes[0].l1_successes)
