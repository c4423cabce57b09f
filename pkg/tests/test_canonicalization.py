import math

import numpy as np
import pytest

from reweightpack.core.canonical import canonical_json, canonicalize, decode_float


def test_equivalent_inputs_canonicalize_to_same_json() -> None:
    left = {"kappa": np.float64(1.5), "K": (0, 3), "config": {"n": np.int64(40), "m": 24}}
    right = {"config": {"m": 24, "n": 40}, "K": [0, 3], "kappa": 1.5}

    assert canonical_json(left) == canonical_json(right)


def test_infinities_round_trip_through_tokens() -> None:
    canonical = canonicalize({"best_C": math.inf, "low": -math.inf})

    assert canonical == {"best_C": "inf", "low": "-inf"}
    assert decode_float(canonical["best_C"]) == math.inf
    assert decode_float(canonical["low"]) == -math.inf
    assert decode_float(0.5) == 0.5


def test_nan_is_rejected() -> None:
    with pytest.raises(ValueError):
        canonicalize({"margin": float("nan")})


def test_sets_are_sorted_and_lists_keep_their_order() -> None:
    canonical = canonicalize({"selected": {5, 1, 3}, "stages": [0.3, 0.1]})

    assert canonical == {"selected": [1, 3, 5], "stages": [0.3, 0.1]}


def test_arrays_and_numpy_scalars_become_plain_json() -> None:
    canonical = canonicalize({"estimate": np.array([1.0, 0.0]), "certified": np.bool_(True)})

    assert canonical == {"certified": True, "estimate": [1.0, 0.0]}
