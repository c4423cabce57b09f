"""Success-probability curves over a parameter grid."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from reweightpack.lab.exceptions import DegenerateFitError
from reweightpack.lab.stats import LogisticFit, fit_logistic, isotonic_smooth, wilson_interval

CURVE_CSV_HEADER: tuple[str, ...] = ("axis", "p_success", "ci_low", "ci_high", "n_trials")


@dataclass(frozen=True, slots=True)
class CurvePoint:
    axis: float
    successes: int
    n_trials: int
    ci_low: float
    ci_high: float
    smoothed: float | None = None
    extras: dict[str, float] = field(default_factory=dict)

    @property
    def p_success(self) -> float:
        return self.successes / self.n_trials if self.n_trials else 0.0

    @classmethod
    def from_counts(cls, axis: float, successes: int, n_trials: int, **extras: float) -> "CurvePoint":
        low, high = wilson_interval(successes, n_trials)
        return cls(
            axis=float(axis),
            successes=int(successes),
            n_trials=int(n_trials),
            ci_low=low,
            ci_high=high,
            extras=dict(extras),
        )

    def to_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "axis": self.axis,
            "successes": self.successes,
            "n_trials": self.n_trials,
            "p_success": self.p_success,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
        }
        if self.smoothed is not None:
            payload["p_smoothed"] = self.smoothed
        payload.update(self.extras)
        return payload


@dataclass(slots=True)
class ThresholdCurve:
    """Per-point success rates with Wilson intervals and an optional logistic threshold."""

    axis_name: str
    points: list[CurvePoint]
    fit: LogisticFit | None = None
    metadata: dict[str, Any] = field(default_factory=dict)
    records: list[Any] = field(default_factory=list, repr=False)

    @property
    def threshold(self) -> float | None:
        return self.fit.midpoint if self.fit is not None else None

    def threshold_interval(self) -> tuple[float, float] | None:
        return self.fit.interval() if self.fit is not None else None

    def require_fit(self) -> LogisticFit:
        if self.fit is None:
            raise DegenerateFitError(f"{self.axis_name} curve has no logistic threshold")
        return self.fit

    def axis_values(self) -> np.ndarray:
        return np.array([point.axis for point in self.points])

    def extra_columns(self) -> tuple[str, ...]:
        names: list[str] = []
        for point in self.points:
            for key in point.extras:
                if key not in names:
                    names.append(key)
        return tuple(names)

    def csv_header(self) -> tuple[str, ...]:
        return CURVE_CSV_HEADER + self.extra_columns()

    def csv_rows(self) -> list[tuple[Any, ...]]:
        extras = self.extra_columns()
        return [
            (
                point.axis,
                point.p_success,
                point.ci_low,
                point.ci_high,
                point.n_trials,
                *(point.extras.get(name, 0.0) for name in extras),
            )
            for point in self.points
        ]

    def to_dict(self) -> dict[str, Any]:
        interval = self.threshold_interval()
        return {
            "axis_name": self.axis_name,
            "points": [point.to_dict() for point in self.points],
            "fit": self.fit.to_dict() if self.fit is not None else None,
            "threshold": self.threshold,
            "threshold_ci": list(interval) if interval is not None else None,
            "metadata": dict(self.metadata),
        }


def build_curve(
    axis_name: str,
    axis: Sequence[float],
    successes: Sequence[int],
    n_trials: Sequence[int],
    *,
    increasing: bool,
    require_fit: bool = True,
    metadata: dict[str, Any] | None = None,
    records: Sequence[Any] | None = None,
) -> ThresholdCurve:
    """Assemble a curve, isotonically smooth it and fit its logistic threshold.

    `increasing` is the expected direction of success along the axis. With
    `require_fit=False` a degenerate grid yields a curve without a fit.
    """
    order = np.argsort(np.asarray(axis, dtype=np.float64), kind="stable")
    xs = [float(axis[i]) for i in order]
    ss = [int(successes[i]) for i in order]
    ts = [int(n_trials[i]) for i in order]
    rates = [s / t if t else 0.0 for s, t in zip(ss, ts)]
    smoothed = isotonic_smooth(rates, ts, increasing=increasing)

    points = []
    for x, s, t, value in zip(xs, ss, ts, smoothed):
        low, high = wilson_interval(s, t)
        points.append(CurvePoint(axis=x, successes=s, n_trials=t, ci_low=low, ci_high=high, smoothed=float(value)))

    fit: LogisticFit | None = None
    try:
        fit = fit_logistic(xs, ss, ts)
    except DegenerateFitError:
        if require_fit:
            raise
    return ThresholdCurve(
        axis_name=axis_name,
        points=points,
        fit=fit,
        metadata=dict(metadata or {}),
        records=list(records or []),
    )
