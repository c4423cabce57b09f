"""Deterministic canonicalization helpers for ReweightKit outputs."""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

# +inf is a legitimate value for kappa and best_C; JSON has no literal for it.
POSITIVE_INFINITY_TOKEN = "inf"
NEGATIVE_INFINITY_TOKEN = "-inf"


def canonicalize(value: Any) -> Any:
    """Normalize values to a deterministic JSON-compatible representation."""
    if isinstance(value, dict):
        return {str(key): canonicalize(value[key]) for key in sorted(value.keys(), key=str)}

    if isinstance(value, np.ndarray):
        value = value.tolist()

    if isinstance(value, (list, tuple, frozenset, set)):
        items = sorted(value) if isinstance(value, (frozenset, set)) else value
        return [canonicalize(item) for item in items]

    if isinstance(value, str):
        return value.replace("\r\n", "\n").replace("\r", "\n")

    if isinstance(value, (bool, np.bool_)) or value is None:
        return None if value is None else bool(value)

    if isinstance(value, (int, np.integer)):
        return int(value)

    if isinstance(value, (float, np.floating)):
        as_float = float(value)
        if math.isnan(as_float):
            raise ValueError("NaN is not supported in canonical JSON")
        if math.isinf(as_float):
            return POSITIVE_INFINITY_TOKEN if as_float > 0 else NEGATIVE_INFINITY_TOKEN
        return float(f"{as_float:.12g}")

    return value


def canonical_json(value: Any) -> str:
    """Serialize a value to stable canonical JSON."""
    return json.dumps(canonicalize(value), ensure_ascii=True, separators=(",", ":"), sort_keys=True)


def decode_float(raw: Any) -> float:
    """Inverse of the infinity encoding used by `canonicalize`."""
    if raw == POSITIVE_INFINITY_TOKEN:
        return math.inf
    if raw == NEGATIVE_INFINITY_TOKEN:
        return -math.inf
    return float(raw)
