"""Binomial intervals, logistic threshold fits and isotonic smoothing."""

from __future__ import annotations

from dataclasses import dataclass
import logging
import math
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import minimize
from scipy.special import expit, xlogy
from scipy.stats import norm
from sklearn.isotonic import isotonic_regression

from reweightpack.lab.exceptions import DegenerateFitError

logger = logging.getLogger(__name__)

CONFIDENCE = 0.95
# keeps the slope finite when the grid separates successes from failures
SLOPE_RIDGE = 1e-4


def z_value(confidence: float = CONFIDENCE) -> float:
    return float(norm.ppf(0.5 + confidence / 2.0))


def wilson_interval(successes: int, trials: int, confidence: float = CONFIDENCE) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        return 0.0, 1.0
    if not 0 <= successes <= trials:
        raise ValueError(f"successes must lie in [0, {trials}], got {successes}")
    z = z_value(confidence)
    p = successes / trials
    denominator = 1.0 + z * z / trials
    centre = (p + z * z / (2.0 * trials)) / denominator
    half = z * math.sqrt(p * (1.0 - p) / trials + z * z / (4.0 * trials * trials)) / denominator
    # clip to the point estimate so the interval always contains it
    return min(max(centre - half, 0.0), p), max(min(centre + half, 1.0), p)


@dataclass(frozen=True, slots=True)
class LogisticFit:
    """logit P(success) = intercept + slope * axis, fitted by maximum likelihood."""

    intercept: float
    slope: float
    midpoint: float
    midpoint_se: float
    residual_deviance: float
    null_deviance: float

    def interval(self, confidence: float = CONFIDENCE) -> tuple[float, float]:
        half = z_value(confidence) * self.midpoint_se
        return self.midpoint - half, self.midpoint + half

    def predict(self, axis: ArrayLike) -> np.ndarray:
        return expit(self.intercept + self.slope * np.asarray(axis, dtype=np.float64))

    def to_dict(self) -> dict[str, Any]:
        low, high = self.interval()
        return {
            "intercept": self.intercept,
            "slope": self.slope,
            "midpoint": self.midpoint,
            "midpoint_se": self.midpoint_se,
            "midpoint_ci": [low, high],
            "residual_deviance": self.residual_deviance,
            "null_deviance": self.null_deviance,
        }


def binomial_deviance(successes: np.ndarray, trials: np.ndarray, p: np.ndarray) -> float:
    failures = trials - successes
    fitted_success = trials * p
    fitted_failure = trials * (1.0 - p)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = xlogy(successes, successes / fitted_success) + xlogy(failures, failures / fitted_failure)
    return float(2.0 * np.sum(np.nan_to_num(terms, nan=0.0, posinf=np.inf)))


def fit_logistic(axis: ArrayLike, successes: ArrayLike, trials: ArrayLike) -> LogisticFit:
    """Binomial logistic regression of success counts on an axis.

    The midpoint -intercept/slope is the 50% crossing; its standard error
    comes from the delta method on the inverse Fisher information.
    Raises DegenerateFitError when success is constant across the grid or the
    fit does not improve on the constant model.
    """
    x = np.asarray(axis, dtype=np.float64)
    s = np.asarray(successes, dtype=np.float64)
    t = np.asarray(trials, dtype=np.float64)
    if x.shape != s.shape or x.shape != t.shape or x.size < 2:
        raise DegenerateFitError("logistic fit needs at least two aligned grid points")
    rates = s / np.where(t > 0, t, 1.0)
    if np.all(rates == rates[0]):
        raise DegenerateFitError(f"success rate is constant ({rates[0]:.3g}) across the grid")

    centre = float(np.mean(x))
    scale = float(np.std(x)) or 1.0
    u = (x - centre) / scale

    def objective(beta: np.ndarray) -> tuple[float, np.ndarray]:
        eta = beta[0] + beta[1] * u
        # -log-likelihood: t log(1 + e^eta) - s eta
        value = float(np.sum(t * np.logaddexp(0.0, eta) - s * eta)) + 0.5 * SLOPE_RIDGE * beta[1] ** 2
        residual = t * expit(eta) - s
        gradient = np.array([np.sum(residual), np.sum(residual * u) + SLOPE_RIDGE * beta[1]])
        return value, gradient

    result = minimize(objective, np.zeros(2), jac=True, method="BFGS")
    if not result.success:
        logger.debug("logistic fit: optimizer reported %s", result.message)
    c0, c1 = (float(value) for value in result.x)
    if c1 == 0.0:
        raise DegenerateFitError("logistic fit has zero slope")

    p = expit(c0 + c1 * u)
    residual_deviance = binomial_deviance(s, t, p)
    null_deviance = binomial_deviance(s, t, np.full_like(p, np.sum(s) / np.sum(t)))
    if residual_deviance >= null_deviance:
        raise DegenerateFitError(
            f"residual deviance {residual_deviance:.4g} does not improve on null {null_deviance:.4g}"
        )

    weights = t * p * (1.0 - p)
    design = np.column_stack([np.ones_like(u), u])
    information = design.T @ (weights[:, None] * design)
    information[1, 1] += SLOPE_RIDGE
    covariance = np.linalg.pinv(information)
    gradient = scale * np.array([-1.0 / c1, c0 / (c1 * c1)])
    variance = float(gradient @ covariance @ gradient)

    return LogisticFit(
        intercept=c0 - c1 * centre / scale,
        slope=c1 / scale,
        midpoint=centre - scale * c0 / c1,
        midpoint_se=math.sqrt(max(variance, 0.0)),
        residual_deviance=residual_deviance,
        null_deviance=null_deviance,
    )


def isotonic_smooth(rates: ArrayLike, weights: ArrayLike, *, increasing: bool) -> np.ndarray:
    """Weighted isotonic regression of success rates along the grid order."""
    values = np.asarray(rates, dtype=np.float64)
    return np.asarray(
        isotonic_regression(values, sample_weight=np.asarray(weights, dtype=np.float64), increasing=increasing),
        dtype=np.float64,
    )
