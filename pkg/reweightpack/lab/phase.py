"""Empirical thresholds: rho_F(delta), delta_c and the recoverable sparsity sweep."""

from __future__ import annotations

from dataclasses import dataclass
import logging
import math
from pathlib import Path
from typing import Sequence

import numpy as np

from reweightpack.artifact import read_csv
from reweightpack.lab.config import LabConfig
from reweightpack.lab.curves import CurvePoint, ThresholdCurve, build_curve
from reweightpack.lab.exceptions import DegenerateFitError, LabConfigError
from reweightpack.lab.stats import fit_logistic, z_value
from reweightpack.lab.trials import SignalSpec, TrialRecord, TrialSpec, count_successes, run_trials
from reweightpack.numcore import derive_seed
from reweightpack.signals import expected_nonzeros

logger = logging.getLogger(__name__)

RHO_TABLE_HEADER: tuple[str, ...] = ("delta", "rho_f")

_RHO_STREAM = 0
_SWEEP_STREAM = 1


def default_rho_grid(points: int = 11) -> list[float]:
    return [round(float(value), 6) for value in np.linspace(0.05, 1.0, points)]


def default_delta_grid(points: int = 11) -> list[float]:
    return [round(float(value), 6) for value in np.linspace(0.1, 0.9, points)]


def default_p1_grid(points: int = 11) -> list[float]:
    return [round(float(value), 6) for value in np.linspace(0.5, 1.0, points)]


def measurements_for(delta: float, n: int) -> int:
    """m = round(delta n), required to satisfy 1 <= m < n."""
    m = int(round(delta * n))
    if not 1 <= m < n:
        raise LabConfigError(f"delta={delta} gives m={m} measurements for n={n}; need 1 <= m < n")
    return m


@dataclass(frozen=True, slots=True)
class RhoTable:
    """Piecewise-linear rho_F(delta) lookup."""

    deltas: tuple[float, ...]
    rhos: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.deltas) < 1 or len(self.deltas) != len(self.rhos):
            raise LabConfigError("rho table needs matching, non-empty delta and rho_f columns")
        if any(b <= a for a, b in zip(self.deltas, self.deltas[1:])):
            raise LabConfigError("rho table deltas must be strictly increasing")
        if any(not 0.0 < rho <= 1.0 for rho in self.rhos):
            raise LabConfigError("rho table values must lie in (0, 1]")

    def lookup(self, delta: float) -> float:
        if not self.deltas[0] <= delta <= self.deltas[-1]:
            raise LabConfigError(
                f"delta={delta} is outside the rho table range [{self.deltas[0]}, {self.deltas[-1]}]"
            )
        return float(np.interp(delta, self.deltas, self.rhos))


def load_rho_table(path: str | Path) -> RhoTable:
    _, rows, _ = read_csv(path, expected_header=RHO_TABLE_HEADER)
    pairs = sorted((float(delta), float(rho)) for delta, rho in rows)
    return RhoTable(deltas=tuple(d for d, _ in pairs), rhos=tuple(r for _, r in pairs))


def estimate_rho_f(
    delta: float,
    n: int,
    trials_per_point: int,
    rho_grid: Sequence[float],
    seed: int,
    *,
    config: LabConfig | None = None,
) -> ThresholdCurve:
    """Plain-l1 success versus rho for floor(rho delta n)-sparse Gaussian signals.

    The fitted 50% midpoint is the empirical weak threshold rho_F(delta).
    """
    cfg = config or LabConfig()
    if not rho_grid or any(not 0.0 < rho <= 1.0 for rho in rho_grid):
        raise LabConfigError("rho grid values must lie in (0, 1]")
    m = measurements_for(delta, n)

    specs: list[TrialSpec] = []
    for point, rho in enumerate(rho_grid):
        k = int(math.floor(rho * delta * n))
        signal = SignalSpec(kind="sparse", k=k, amp_law="gaussian")
        specs.extend(_point_specs(cfg, seed, point, trials_per_point, "l1", n, m, signal))

    records = run_trials(specs, workers=cfg.workers)
    curve = _curve_from_records(
        "rho",
        rho_grid,
        records,
        trials_per_point,
        increasing=False,
        metadata={"delta": delta, "n": n, "m": m},
    )
    if curve.threshold is not None:
        curve.metadata["rho_f"] = curve.threshold
        curve.metadata["zeta"] = curve.threshold * delta
    logger.info("rho_F(%.4g) estimate at n=%d: %s", delta, n, curve.threshold)
    return curve


def estimate_delta_c(
    gamma1: float,
    p1: float,
    p2: float,
    weight_ratio: float,
    n: int,
    trials_per_point: int,
    delta_grid: Sequence[float],
    seed: int,
    *,
    amp_law: str = "gaussian",
    config: LabConfig | None = None,
) -> ThresholdCurve:
    """Weighted-l1 success on the two-class model versus delta; midpoint is delta_c."""
    cfg = config or LabConfig()
    if not weight_ratio >= 1.0:
        raise LabConfigError(f"weight_ratio must be >= 1, got {weight_ratio}")
    for name, value in (("gamma1", gamma1), ("p1", p1), ("p2", p2)):
        if not 0.0 <= value <= 1.0:
            raise LabConfigError(f"{name} must lie in [0, 1], got {value}")
    if not delta_grid:
        raise LabConfigError("delta grid is empty")

    signal = SignalSpec(kind="nonuniform", gamma1=gamma1, p1=p1, p2=p2, amp_law=amp_law)  # type: ignore[arg-type]
    specs: list[TrialSpec] = []
    for point, delta in enumerate(delta_grid):
        m = measurements_for(delta, n)
        specs.extend(
            _point_specs(cfg, seed, point, trials_per_point, "weighted", n, m, signal, W=weight_ratio)
        )

    records = run_trials(specs, workers=cfg.workers)
    curve = _curve_from_records(
        "delta",
        delta_grid,
        records,
        trials_per_point,
        increasing=True,
        metadata={
            "gamma1": gamma1,
            "p1": p1,
            "p2": p2,
            "weight_ratio": weight_ratio,
            "n": n,
            "expected_nonzeros": expected_nonzeros(n, gamma1, p1, p2),
        },
    )
    if curve.threshold is not None:
        curve.metadata["delta_c"] = curve.threshold
    return curve


def sweep_figure1(
    delta: float,
    eps: float,
    W: float,
    p1_grid: Sequence[float],
    n: int,
    trials_per_point: int,
    seed: int,
    *,
    rho_f: float | None = None,
    rho_grid: Sequence[float] | None = None,
    config: LabConfig | None = None,
) -> ThresholdCurve:
    """Recoverable average sparsity P1 gamma1 + P2 gamma2 of the two-stage algorithm.

    The block K' has k_strong = floor((1 - eps) rho_F delta n) entries. For
    each P1, P2 is bisected for the largest value at which two-stage recovery
    still succeeds in at least half of the trials. rho_F comes from
    `estimate_rho_f` at the same n unless supplied.
    """
    cfg = config or LabConfig()
    if not 0.0 < eps < 1.0:
        raise LabConfigError(f"eps must lie in (0, 1), got {eps}")
    if not W >= 1.0:
        raise LabConfigError(f"W must be >= 1, got {W}")
    if not p1_grid or any(not 0.0 <= p1 <= 1.0 for p1 in p1_grid):
        raise LabConfigError("P1 grid values must lie in [0, 1]")
    if not cfg.tail_mass > 0.0:
        raise LabConfigError("the sweep needs a positive tail mass for entries off the block")
    m = measurements_for(delta, n)

    if rho_f is None:
        rho_curve = estimate_rho_f(
            delta,
            n,
            trials_per_point,
            rho_grid or default_rho_grid(cfg.grid_points),
            derive_seed(seed, _RHO_STREAM),
            config=cfg,
        )
        rho_fit = rho_curve.require_fit()
        rho_hat, rho_se, rho_source = rho_fit.midpoint, rho_fit.midpoint_se, "empirical"
    else:
        rho_hat, rho_se, rho_source = float(rho_f), 0.0, "table"
    if not 0.0 < rho_hat <= 1.0:
        raise DegenerateFitError(f"rho_F estimate {rho_hat:.4g} is outside (0, 1]")

    z = z_value()
    zeta = rho_hat * delta
    zeta_ci = ((rho_hat - z * rho_se) * delta, (rho_hat + z * rho_se) * delta)
    k_strong = int(math.floor((1.0 - eps) * rho_hat * delta * n))
    if k_strong < 1:
        raise LabConfigError(f"selected block is empty (k_strong={k_strong})")
    gamma1 = k_strong / n
    gamma2 = 1.0 - gamma1
    p2_ceiling = min(1.0, delta)

    points: list[CurvePoint] = []
    all_records: list[TrialRecord] = []
    next_id = 0
    for index, p1 in enumerate(p1_grid):
        evaluations: dict[float, tuple[int, int]] = {}

        def evaluate(p2: float) -> tuple[int, int]:
            nonlocal next_id
            records = run_trials(
                _block_specs(cfg, seed, index, next_id, trials_per_point, n, m, k_strong, p1, p2, W),
                workers=cfg.workers,
            )
            next_id += trials_per_point
            all_records.extend(records)
            evaluations[p2] = count_successes(records)
            return evaluations[p2]

        low, high = 0.0, p2_ceiling
        passing = evaluate(0.0)
        if passing[0] * 2 < passing[1]:
            logger.warning("P1=%.4g: two-stage recovery fails even with an empty tail", p1)
            high = 0.0
        else:
            for _ in range(cfg.p2_bisection_steps):
                middle = 0.5 * (low + high)
                counts = evaluate(middle)
                if counts[0] * 2 >= counts[1]:
                    low, passing = middle, counts
                else:
                    high = middle

        p2_low, p2_high = _p2_interval(evaluations, low, high, p2_ceiling)
        point = CurvePoint.from_counts(
            p1,
            passing[0],
            passing[1],
            p2=low,
            sparsity_factor=p1 * gamma1 + low * gamma2,
            sparsity_ci_low=p1 * gamma1 + p2_low * gamma2,
            sparsity_ci_high=p1 * gamma1 + p2_high * gamma2,
        )
        points.append(point)
        logger.info(
            "P1=%.4g: P2=%.4g, sparsity factor %.4g (baseline %.4g)",
            p1,
            low,
            point.extras["sparsity_factor"],
            zeta,
        )

    metadata = {
        "delta": delta,
        "eps": eps,
        "W": W,
        "n": n,
        "m": m,
        "trials_per_point": trials_per_point,
        "k_strong": k_strong,
        "gamma1": gamma1,
        "rho_f": rho_hat,
        "rho_f_source": rho_source,
        "zeta": zeta,
        "zeta_ci_low": zeta_ci[0],
        "zeta_ci_high": zeta_ci[1],
        "a1": cfg.a1,
        "tail_mass": cfg.tail_mass,
    }
    return ThresholdCurve(axis_name="p1", points=points, metadata=metadata, records=all_records)


def _p2_interval(
    evaluations: dict[float, tuple[int, int]],
    low: float,
    high: float,
    ceiling: float,
) -> tuple[float, float]:
    """95% interval for the 50% crossing in P2; falls back to the bisection bracket."""
    bracket = (low, high)
    if len(evaluations) < 3:
        return bracket
    axis = sorted(evaluations)
    try:
        fit = fit_logistic(axis, [evaluations[p][0] for p in axis], [evaluations[p][1] for p in axis])
    except DegenerateFitError:
        return bracket
    fit_low, fit_high = fit.interval()
    if not (math.isfinite(fit_low) and math.isfinite(fit_high)):
        return bracket
    return min(max(fit_low, 0.0), low), max(min(fit_high, ceiling), low)


def _point_specs(
    cfg: LabConfig,
    seed: int,
    point: int,
    trials: int,
    algorithm: str,
    n: int,
    m: int,
    signal: SignalSpec,
    *,
    W: float = 1.0,
) -> list[TrialSpec]:
    return [
        TrialSpec(
            trial_id=point * trials + trial,
            seed=derive_seed(seed, point, trial),
            algorithm=algorithm,  # type: ignore[arg-type]
            n=n,
            m=m,
            signal=signal,
            W=W,
            eps_prime=cfg.eps_prime,
            t_max=cfg.t_max,
            success_tol=cfg.success_tol,
            encoding=cfg.encoding,
            timing=cfg.timing,
            simplex=cfg.simplex,
        )
        for trial in range(trials)
    ]


def _curve_from_records(
    axis_name: str,
    grid: Sequence[float],
    records: Sequence[TrialRecord],
    trials_per_point: int,
    *,
    increasing: bool,
    metadata: dict[str, float],
) -> ThresholdCurve:
    successes = [0] * len(grid)
    totals = [0] * len(grid)
    for record in records:
        point = record.trial_id // trials_per_point
        successes[point] += int(record.success)
        totals[point] += 1
    return build_curve(
        axis_name,
        list(grid),
        successes,
        totals,
        increasing=increasing,
        metadata=metadata,
        records=records,
    )


def _block_specs(
    cfg: LabConfig,
    seed: int,
    index: int,
    first_id: int,
    trials: int,
    n: int,
    m: int,
    k_strong: int,
    p1: float,
    p2: float,
    W: float,
) -> list[TrialSpec]:
    signal = SignalSpec(
        kind="block",
        block_size=k_strong,
        p1=p1,
        p2=p2,
        a1=cfg.a1,
        tail_mass=cfg.tail_mass,
    )
    return [
        TrialSpec(
            trial_id=first_id + trial,
            # common random numbers across P2 at a fixed P1
            seed=derive_seed(seed, _SWEEP_STREAM, index, trial),
            algorithm="modified",
            n=n,
            m=m,
            signal=signal,
            W=W,
            k_select=k_strong,
            eps_prime=cfg.eps_prime,
            t_max=cfg.t_max,
            success_tol=cfg.success_tol,
            encoding=cfg.encoding,
            timing=cfg.timing,
            simplex=cfg.simplex,
        )
        for trial in range(trials)
    ]
