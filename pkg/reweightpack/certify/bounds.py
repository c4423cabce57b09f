"""Closed-form error, support and sparsity-factor bounds."""

from __future__ import annotations

import logging
import math

from reweightpack.certify.exceptions import BoundParameterError
from reweightpack.certify.models import ProbabilityBound, SupportErrorBound

logger = logging.getLogger(__name__)


def recovery_error_bound(C: float, kappa: float, tail_mass: float) -> float:
    """2C(1 + kappa)/(C - 1) * tail_mass, the l1 error bound of plain l1."""
    _check_C_kappa(C, kappa)
    _check_non_negative(tail_mass=tail_mass)
    if tail_mass == 0.0:
        return 0.0
    return _amplification(C) * (1.0 + kappa) * tail_mass


def support_error_bound(C: float, kappa: float, a1: float, delta: float) -> SupportErrorBound:
    """4C(1 + kappa) delta / ((C - 1) a1): indices selected off the support."""
    _check_C_kappa(C, kappa)
    _check_positive(a1=a1)
    _check_non_negative(delta=delta)
    value = 0.0 if delta == 0.0 else 2.0 * _amplification(C) * (1.0 + kappa) * delta / a1
    return SupportErrorBound(value=value, C=float(C), kappa=float(kappa), a1=float(a1), delta=float(delta))


def strong_hits_lower_bound(k_strong: int, C: float, kappa: float, a1: float, delta: float) -> float:
    """At least k_strong minus the support error bound of the selected entries are nonzero.

    A negative value means the bound is vacuous.
    """
    if k_strong < 0:
        raise BoundParameterError(f"k_strong must be non-negative, got {k_strong}")
    return k_strong - support_error_bound(C, kappa, a1, delta).value


def p1_lower_bound(
    C: float,
    kappa: float,
    a1: float,
    delta: float,
    rho_f: float,
    deltam: float,
    n: int,
) -> ProbabilityBound:
    """P1 >= 1 - 4C(kappa + 1) / ((C - 1) a1 rho_F delta_m) * delta / n."""
    _check_C_kappa(C, kappa)
    _check_positive(a1=a1, n=n)
    _check_non_negative(delta=delta)
    _check_fraction(rho_f=rho_f, deltam=deltam)
    if delta == 0.0:
        return _clamp(1.0, "P1")
    coefficient = 2.0 * _amplification(C) * (1.0 + kappa) / (a1 * rho_f * deltam)
    return _clamp(1.0 - coefficient * delta / n, "P1")


def p2_upper_bound(
    k_total: int,
    eps: float,
    rho_f: float,
    deltam: float,
    n: int,
    C: float,
    kappa: float,
    a1: float,
    delta: float,
) -> ProbabilityBound:
    """P2 <= (k_total - (1-eps) rho_F delta_m n + support bound) / (n - (1-eps) rho_F delta_m n)."""
    _check_C_kappa(C, kappa)
    _check_positive(a1=a1, n=n)
    _check_non_negative(delta=delta, k_total=k_total)
    _check_fraction(rho_f=rho_f, deltam=deltam)
    if not 0.0 < eps < 1.0:
        raise BoundParameterError(f"eps must lie in (0, 1), got {eps}")
    block = (1.0 - eps) * rho_f * deltam * n
    denominator = n - block
    if denominator <= 0.0:
        raise BoundParameterError("selected block covers the whole signal")
    numerator = k_total - block + support_error_bound(C, kappa, a1, delta).value
    return _clamp(numerator / denominator, "P2")


def max_tail_for_p1(
    p1_target: float,
    C: float,
    kappa: float,
    a1: float,
    rho_f: float,
    deltam: float,
    n: int,
) -> float:
    """Largest tail mass delta for which the P1 lower bound still reaches p1_target."""
    if not 0.0 <= p1_target <= 1.0:
        raise BoundParameterError(f"p1_target must lie in [0, 1], got {p1_target}")
    _check_C_kappa(C, kappa)
    _check_positive(a1=a1, n=n)
    _check_fraction(rho_f=rho_f, deltam=deltam)
    if math.isinf(kappa):
        return 0.0
    coefficient = 2.0 * _amplification(C) * (1.0 + kappa) / (a1 * rho_f * deltam)
    return (1.0 - p1_target) * n / coefficient


def _amplification(C: float) -> float:
    # 2C / (C - 1), with its C -> inf limit
    return 2.0 if math.isinf(C) else 2.0 * C / (C - 1.0)


def _clamp(raw: float, label: str) -> ProbabilityBound:
    value = min(max(raw, 0.0), 1.0)
    clamped = value != raw
    if clamped:
        logger.warning("%s bound %.6g clamped to %.6g", label, raw, value)
    return ProbabilityBound(value=value, raw=raw, clamped=clamped)


def _check_C_kappa(C: float, kappa: float) -> None:
    if math.isnan(C) or not C > 1.0:
        raise BoundParameterError(f"C must exceed 1, got {C}")
    if math.isnan(kappa) or kappa < 0.0:
        raise BoundParameterError(f"kappa must be non-negative, got {kappa}")


def _check_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise BoundParameterError(f"{name} must be positive, got {value}")


def _check_non_negative(**values: float) -> None:
    for name, value in values.items():
        if math.isnan(value) or value < 0:
            raise BoundParameterError(f"{name} must be non-negative, got {value}")


def _check_fraction(**values: float) -> None:
    for name, value in values.items():
        if not 0.0 < value <= 1.0:
            raise BoundParameterError(f"{name} must lie in (0, 1], got {value}")
