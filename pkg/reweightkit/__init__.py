"""Stable public API surface for ReweightKit.

This module is the supported import path for library users.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from numpy.typing import ArrayLike

from reweightpack import __version__
from reweightpack.certify import RobustnessCertificate, certificate, compute_kappa
from reweightpack.core.types import Algorithm, AmpLaw, L1Encoding
from reweightpack.lab import (
    CampaignResult,
    ComparisonResult,
    LabConfig,
    ThresholdCurve,
    compare_reweighting,
    default_p1_grid,
    default_rho_grid,
    estimate_rho_f,
    run_certificate_campaign,
    sweep_figure1,
)
from reweightpack.recover import RecoveryResult, run_algorithm

RecoveryAlgorithm = Algorithm


def recover(
    a: ArrayLike,
    y: ArrayLike,
    *,
    algorithm: RecoveryAlgorithm = "l1",
    weights: ArrayLike | None = None,
    eps_prime: float = 0.1,
    t_max: int = 4,
    k_strong: int | None = None,
    W: float = 10.0,
    encoding: L1Encoding = "split",
) -> RecoveryResult:
    """Recover a sparse signal from measurements y = A x.

    Args:
        a: Measurement matrix with full row rank.
        y: Measurement vector.
        algorithm: ``"l1"``, ``"weighted"``, ``"candes"`` or ``"modified"``.
        weights: Positive weights, required for ``"weighted"``.
        eps_prime: Reweighting offset for ``"candes"``.
        t_max: Reweighting iterations for ``"candes"``.
        k_strong: Size of the selected block for ``"modified"``.
        W: Weight outside the selected block for ``"modified"``.
        encoding: LP encoding of the l1 objective.

    Returns:
        Recovery result with the final estimate and every stage estimate.

    Raises:
        UnknownAlgorithmError: If the algorithm name is not recognised.
        RecoveryParameterError: If the algorithm's parameters are invalid.
    """
    return run_algorithm(
        algorithm,
        a,
        y,
        weights=weights,
        eps_prime=eps_prime,
        t_max=t_max,
        k_strong=k_strong,
        W=W,
        encoding=encoding,
    )


def kappa(a: ArrayLike, K: Iterable[int]) -> float:
    """Exact null-space ratio max ||w_K||_1 / ||w_Kbar||_1 over A w = 0.

    Returns ``inf`` when the columns of A on K are linearly dependent.
    """
    return compute_kappa(a, K)


def certify(a: ArrayLike, x: ArrayLike, K: Iterable[int]) -> RobustnessCertificate:
    """Certificate (kappa, best C, margin) for a signal x with strong set K.

    Args:
        a: Measurement matrix with full row rank.
        x: Full-length signal; only its entries on K enter the inequality.
        K: Strong index set, 0-based.

    Returns:
        Robustness certificate; ``certified`` is true when best C exceeds 1
        and kappa is finite.
    """
    strong = sorted(set(int(index) for index in K))
    x_strong = np.asarray(x, dtype=float)[strong]
    return certificate(a, strong, x_strong)


def rho_threshold(
    delta: float,
    *,
    n: int = 200,
    trials: int = 100,
    rho_grid: Sequence[float] | None = None,
    seed: int = 0,
    workers: int = 1,
) -> ThresholdCurve:
    """Empirical plain-l1 weak threshold curve at undersampling ratio delta.

    The fitted midpoint (``curve.threshold``) is the rho at which half of the
    trials recover exactly.
    """
    config = LabConfig(n=n, trials_per_point=trials, workers=workers)
    grid = list(rho_grid) if rho_grid is not None else default_rho_grid(config.grid_points)
    return estimate_rho_f(delta, n, trials, grid, seed, config=config)


def sparsity_sweep(
    delta: float,
    *,
    eps: float = 0.01,
    W: float = 10.0,
    p1_grid: Sequence[float] | None = None,
    n: int = 200,
    trials: int = 100,
    rho_f: float | None = None,
    seed: int = 0,
    workers: int = 1,
) -> ThresholdCurve:
    """Recoverable average sparsity of two-stage reweighting across P1.

    Args:
        delta: Undersampling ratio m/n.
        eps: Block shrink factor applied to rho_F delta n.
        W: Weight outside the selected block.
        p1_grid: P1 values; an even grid on [0.5, 1] by default.
        n: Signal length.
        trials: Trials per evaluated (P1, P2) pair.
        rho_f: Known weak threshold; estimated empirically when omitted.
        seed: Master seed.
        workers: Worker processes for independent trials.

    Returns:
        Curve over P1 whose points carry the P2 threshold and sparsity factor.
    """
    config = LabConfig(n=n, trials_per_point=trials, W=W, eps=eps, workers=workers)
    grid = list(p1_grid) if p1_grid is not None else default_p1_grid(config.grid_points)
    return sweep_figure1(delta, eps, W, grid, n, trials, seed, rho_f=rho_f, config=config)


def campaign(
    *,
    n: int = 40,
    m: int = 24,
    instances: int = 200,
    k_strong: int = 6,
    k_total: int = 12,
    a1: float = 1.0,
    tail_mass: float = 0.05,
    seed: int = 0,
    workers: int = 1,
) -> CampaignResult:
    """Certify random instances and count support and error-chain bound violations."""
    config = LabConfig(n=n, workers=workers)
    return run_certificate_campaign(n, m, instances, k_strong, k_total, a1, tail_mass, seed, config=config)


def compare(
    *,
    n: int = 40,
    m: int = 22,
    k: int = 9,
    eps_prime: float = 0.1,
    t_max: int = 4,
    trials: int = 50,
    amp_laws: Sequence[AmpLaw] = ("gaussian", "flat"),
    seed: int = 0,
    workers: int = 1,
) -> ComparisonResult:
    """Paired plain-l1 versus iterative-reweighting success counts per amplitude law."""
    config = LabConfig(n=n, workers=workers)
    return compare_reweighting(n, m, k, eps_prime, t_max, trials, seed, amp_laws=amp_laws, config=config)


__all__ = [
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
