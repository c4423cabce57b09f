"""Certificate and bound value models."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from reweightpack.core.types import CertMethod
from reweightpack.numcore import IndexSet

BEST_C_FAILURE = 1.0


@dataclass(frozen=True, slots=True)
class RobustnessCheck:
    """Outcome of the weak-robustness inequality check at one constant C."""

    holds: bool
    margin: float
    C: float

    def to_dict(self) -> dict[str, Any]:
        return {"holds": self.holds, "margin": self.margin, "C": self.C}


@dataclass(frozen=True, slots=True)
class RobustnessCertificate:
    """Null-space certificate for one (A, K, x_K) instance.

    `best_C` is +inf when the inequality holds at the bisection ceiling and
    exactly 1.0 when it already fails just above 1.
    """

    K: IndexSet
    kappa: float
    best_C: float
    margin: float
    method: CertMethod

    @property
    def certified(self) -> bool:
        return self.best_C > BEST_C_FAILURE + 1e-3 and math.isfinite(self.kappa)

    def to_dict(self) -> dict[str, Any]:
        return {
            "K": list(self.K),
            "kappa": self.kappa,
            "best_C": self.best_C,
            "margin": self.margin,
            "method": self.method,
            "certified": self.certified,
        }


@dataclass(frozen=True, slots=True)
class SupportErrorBound:
    """Bound on the number of indices selected off the true support."""

    value: float
    C: float
    kappa: float
    a1: float
    delta: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "C": self.C,
            "kappa": self.kappa,
            "a1": self.a1,
            "delta": self.delta,
        }


@dataclass(frozen=True, slots=True)
class ProbabilityBound:
    """Sparsity-factor bound; `raw` is the unclamped formula value."""

    value: float
    raw: float
    clamped: bool

    def to_dict(self) -> dict[str, Any]:
        return {"value": self.value, "raw": self.raw, "clamped": self.clamped}
