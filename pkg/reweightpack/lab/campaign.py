"""Certificate campaign: per-instance certificates checked against observed recovery."""

from __future__ import annotations

from dataclasses import dataclass, field
import logging
import math
from typing import Any

import numpy as np

from reweightpack.certify import (
    C_CEILING,
    RobustnessCertificate,
    certificate,
    p1_lower_bound,
    p2_upper_bound,
    recovery_error_bound,
    strong_hits_lower_bound,
    support_error_bound,
)
from reweightpack.lab.config import LabConfig
from reweightpack.lab.exceptions import LabConfigError
from reweightpack.lab.trials import MATRIX_STREAM, SIGNAL_STREAM, ordered_map
from reweightpack.lp import SimplexConfig
from reweightpack.numcore import complement, derive_seed, restricted_l1, sample_gaussian_matrix
from reweightpack.recover import reweight_modified, support_overlap
from reweightpack.signals import generate_model_signal

logger = logging.getLogger(__name__)

BOUND_SLACK = 1e-6

CAMPAIGN_CSV_HEADER: tuple[str, ...] = (
    "instance_id",
    "seed",
    "m",
    "n",
    "K",
    "kappa",
    "best_C",
    "margin",
    "certified",
    "false_selections",
    "support_bound",
    "l1_error",
    "recovery_bound",
    "p1",
    "p1_bound",
    "p2",
    "p2_bound",
    "violations",
)


@dataclass(frozen=True, slots=True)
class CampaignTask:
    instance_id: int
    seed: int
    n: int
    m: int
    k_strong: int
    k_total: int
    a1: float
    tail_mass: float
    W: float
    eps: float = 0.01
    simplex: SimplexConfig | None = None


@dataclass(frozen=True, slots=True)
class CampaignInstance:
    """Certificate of one instance and the bound checks run against it.

    `p1` and `p2` are the observed nonzero fractions on the selected block and
    off it. Bound fields are None for instances that are not certified.
    """

    instance_id: int
    seed: int
    m: int
    n: int
    certificate: RobustnessCertificate
    selected_set: tuple[int, ...]
    strong_hits: int
    false_selections: int
    l1_error: float
    weak_error: float
    strong_deficit: float
    tail_l1: float
    p1: float
    p2: float
    support_bound: float | None = None
    recovery_bound: float | None = None
    p1_bound: float | None = None
    p2_bound: float | None = None
    violations: tuple[str, ...] = ()

    @property
    def certified(self) -> bool:
        return self.certificate.certified

    def csv_row(self) -> tuple[Any, ...]:
        return (
            self.instance_id,
            self.seed,
            self.m,
            self.n,
            " ".join(str(index) for index in self.certificate.K),
            self.certificate.kappa,
            self.certificate.best_C,
            self.certificate.margin,
            self.certified,
            self.false_selections,
            _blank_if_none(self.support_bound),
            self.l1_error,
            _blank_if_none(self.recovery_bound),
            self.p1,
            _blank_if_none(self.p1_bound),
            self.p2,
            _blank_if_none(self.p2_bound),
            len(self.violations),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance_id": self.instance_id,
            "seed": self.seed,
            "m": self.m,
            "n": self.n,
            **self.certificate.to_dict(),
            "selected_set": list(self.selected_set),
            "strong_hits": self.strong_hits,
            "false_selections": self.false_selections,
            "l1_error": self.l1_error,
            "weak_error": self.weak_error,
            "strong_deficit": self.strong_deficit,
            "tail_l1": self.tail_l1,
            "p1": self.p1,
            "p2": self.p2,
            "support_bound": self.support_bound,
            "recovery_bound": self.recovery_bound,
            "p1_bound": self.p1_bound,
            "p2_bound": self.p2_bound,
            "violations": list(self.violations),
        }


@dataclass(slots=True)
class CampaignResult:
    config: dict[str, Any]
    instances: list[CampaignInstance] = field(default_factory=list)

    @property
    def certified_count(self) -> int:
        return sum(1 for instance in self.instances if instance.certified)

    @property
    def violation_count(self) -> int:
        return sum(len(instance.violations) for instance in self.instances)

    def summary(self) -> dict[str, int]:
        return {
            "instances": len(self.instances),
            "certified": self.certified_count,
            "not_certified": len(self.instances) - self.certified_count,
            "violations": self.violation_count,
        }

    def csv_rows(self) -> list[tuple[Any, ...]]:
        return [instance.csv_row() for instance in self.instances]

    def to_dict(self) -> dict[str, Any]:
        return {
            "config": dict(self.config),
            "instances": [instance.to_dict() for instance in self.instances],
            "summary": self.summary(),
        }


def run_certificate_campaign(
    n: int,
    m: int,
    instance_count: int,
    k_strong: int,
    k_total: int,
    a1: float,
    tail_mass: float,
    seed: int,
    *,
    W: float | None = None,
    config: LabConfig | None = None,
) -> CampaignResult:
    """Certify random instances and check the support, error-chain and P1/P2 bounds on each."""
    cfg = config or LabConfig()
    if not 1 <= m < n:
        raise LabConfigError(f"require 1 <= m < n, got m={m}, n={n}")
    if instance_count < 0:
        raise LabConfigError("instance_count must be non-negative")

    tasks = [
        CampaignTask(
            instance_id=index,
            seed=derive_seed(seed, index),
            n=n,
            m=m,
            k_strong=k_strong,
            k_total=k_total,
            a1=a1,
            tail_mass=tail_mass,
            W=cfg.W if W is None else W,
            eps=cfg.eps,
            simplex=cfg.simplex,
        )
        for index in range(instance_count)
    ]
    instances = ordered_map(certify_instance, tasks, workers=cfg.workers)
    result = CampaignResult(
        config={
            "n": n,
            "m": m,
            "instances": instance_count,
            "k_strong": k_strong,
            "k_total": k_total,
            "a1": a1,
            "tail_mass": tail_mass,
            "seed": seed,
            "W": cfg.W if W is None else W,
            "eps": cfg.eps,
        },
        instances=sorted(instances, key=lambda instance: instance.instance_id),
    )
    logger.info("certificate campaign: %s", result.summary())
    return result


def certify_instance(task: CampaignTask) -> CampaignInstance:
    a = sample_gaussian_matrix(task.m, task.n, derive_seed(task.seed, MATRIX_STREAM))
    signal = generate_model_signal(
        task.n, task.k_strong, task.a1, task.tail_mass, task.k_total, derive_seed(task.seed, SIGNAL_STREAM)
    )
    strong = list(signal.strong_set)
    cert = certificate(a, signal.strong_set, signal.x[strong], config=task.simplex)

    recovery = reweight_modified(a, a @ signal.x, task.k_strong, task.W, config=task.simplex)
    first_stage = recovery.stage_estimates[0]
    error = signal.x - first_stage
    weak = complement(signal.strong_set, task.n)
    tail_l1 = signal.tail_l1
    strong_hits, false_selections = support_overlap(recovery.selected_set, signal.support, task.n)
    block = len(recovery.selected_set)
    p1 = strong_hits / block if block else 1.0
    p2 = (signal.k_total - strong_hits) / (task.n - block) if block < task.n else 0.0
    weak_error = restricted_l1(error, weak)
    strong_deficit = restricted_l1(signal.x, strong) - restricted_l1(first_stage, strong)
    l1_error = float(np.sum(np.abs(error)))

    instance = dict(
        instance_id=task.instance_id,
        seed=task.seed,
        m=task.m,
        n=task.n,
        certificate=cert,
        selected_set=recovery.selected_set,
        strong_hits=strong_hits,
        false_selections=false_selections,
        l1_error=l1_error,
        weak_error=weak_error,
        strong_deficit=strong_deficit,
        tail_l1=tail_l1,
        p1=p1,
        p2=p2,
    )
    if not cert.certified:
        logger.debug("instance %d not certified (best_C=%s)", task.instance_id, cert.best_C)
        return CampaignInstance(**instance)

    # an unbounded best C is checked at the bisection ceiling where it was verified
    C = C_CEILING if math.isinf(cert.best_C) else cert.best_C
    kappa = cert.kappa
    support_bound = support_error_bound(C, kappa, task.a1, signal.tail_mass).value
    recovery_bound = recovery_error_bound(C, kappa, tail_l1)
    amplification = 2.0 * C / (C - 1.0)
    deficit_factor = 2.0 / (C - 1.0)
    p1_bound, p2_bound = _sparsity_factor_bounds(task, block, signal.k_total, C, kappa, signal.tail_mass)

    violations = []
    if false_selections > support_bound + BOUND_SLACK:
        violations.append("support")
    if strong_hits < strong_hits_lower_bound(block, C, kappa, task.a1, signal.tail_mass) - BOUND_SLACK:
        violations.append("strong-hits")
    if l1_error > recovery_bound + BOUND_SLACK:
        violations.append("recovery")
    if weak_error > amplification * tail_l1 + BOUND_SLACK:
        violations.append("weak-error")
    if strong_deficit > deficit_factor * tail_l1 + BOUND_SLACK:
        violations.append("strong-deficit")
    if p1_bound is not None and p1 < p1_bound - BOUND_SLACK:
        violations.append("p1")
    if p2_bound is not None and p2 > p2_bound + BOUND_SLACK:
        violations.append("p2")
    if violations:
        logger.warning("instance %d violates %s", task.instance_id, ", ".join(violations))
    return CampaignInstance(
        **instance,
        support_bound=support_bound,
        recovery_bound=recovery_bound,
        p1_bound=p1_bound,
        p2_bound=p2_bound,
        violations=tuple(violations),
    )


def _sparsity_factor_bounds(
    task: CampaignTask,
    block: int,
    k_total: int,
    C: float,
    kappa: float,
    delta: float,
) -> tuple[float | None, float | None]:
    """P1 and P2 bounds for a selected block of `block` entries.

    The P1 bound counts rho_F delta_m n entries and the P2 bound counts
    (1 - eps) rho_F delta_m n; rho_F is set so that each count equals `block`.
    """
    if block == 0 or block >= task.n:
        return None, None
    deltam = task.m / task.n
    p1_rho = block / task.m
    p2_rho = block / ((1.0 - task.eps) * task.m)
    p1_bound = None
    if p1_rho <= 1.0:
        p1_bound = p1_lower_bound(C, kappa, task.a1, delta, p1_rho, deltam, task.n).value
    p2_bound = None
    if p2_rho <= 1.0:
        p2_bound = p2_upper_bound(k_total, task.eps, p2_rho, deltam, task.n, C, kappa, task.a1, delta).value
    return p1_bound, p2_bound


def _blank_if_none(value: float | None) -> float | str:
    return "" if value is None else value
