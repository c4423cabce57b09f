"""Paired plain-l1 versus iterative-reweighting comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
import logging
from typing import Any, Sequence

from reweightpack.core.types import AMP_LAWS, AmpLaw
from reweightpack.lab.config import LabConfig
from reweightpack.lab.exceptions import LabConfigError
from reweightpack.lab.stats import wilson_interval
from reweightpack.lab.trials import SignalSpec, TrialRecord, TrialSpec, run_trials
from reweightpack.numcore import derive_seed

logger = logging.getLogger(__name__)

COMPARISON_CSV_HEADER: tuple[str, ...] = (
    "amp_law",
    "algo",
    "successes",
    "n_trials",
    "p_success",
    "ci_low",
    "ci_high",
)


@dataclass(frozen=True, slots=True)
class PairedOutcome:
    """Success counts of both algorithms on the same instances."""

    amp_law: AmpLaw
    trials: int
    l1_successes: int
    candes_successes: int
    both: int
    only_l1: int
    only_candes: int

    def rows(self) -> list[tuple[Any, ...]]:
        rows = []
        for algorithm, successes in (("l1", self.l1_successes), ("candes", self.candes_successes)):
            low, high = wilson_interval(successes, self.trials)
            rows.append((self.amp_law, algorithm, successes, self.trials, successes / self.trials, low, high))
        return rows

    def to_dict(self) -> dict[str, Any]:
        return {
            "amp_law": self.amp_law,
            "trials": self.trials,
            "l1_successes": self.l1_successes,
            "candes_successes": self.candes_successes,
            "both": self.both,
            "only_l1": self.only_l1,
            "only_candes": self.only_candes,
        }


@dataclass(slots=True)
class ComparisonResult:
    n: int
    m: int
    k: int
    eps_prime: float
    t_max: int
    outcomes: list[PairedOutcome]
    records: list[TrialRecord] = field(default_factory=list, repr=False)

    def csv_rows(self) -> list[tuple[Any, ...]]:
        return [row for outcome in self.outcomes for row in outcome.rows()]

    def to_dict(self) -> dict[str, Any]:
        return {
            "config": {"n": self.n, "m": self.m, "k": self.k, "eps_prime": self.eps_prime, "t_max": self.t_max},
            "outcomes": [outcome.to_dict() for outcome in self.outcomes],
            "rows": [dict(zip(COMPARISON_CSV_HEADER, row)) for row in self.csv_rows()],
        }


def compare_reweighting(
    n: int,
    m: int,
    k: int,
    eps_prime: float,
    t_max: int,
    trials: int,
    seed: int,
    *,
    amp_laws: Sequence[AmpLaw] = ("gaussian", "flat"),
    config: LabConfig | None = None,
) -> ComparisonResult:
    """Run plain l1 and iterative reweighting on identical instances per amplitude law.

    Reweighting is expected to help for Gaussian amplitudes and not for flat
    +/-1 amplitudes.
    """
    cfg = (config or LabConfig()).with_overrides(eps_prime=eps_prime, t_max=t_max)
    if not 1 <= m < n or not 0 <= k <= n:
        raise LabConfigError(f"require 1 <= m < n and 0 <= k <= n, got n={n}, m={m}, k={k}")
    if trials < 1:
        raise LabConfigError("trials must be positive")

    specs: list[TrialSpec] = []
    for law_index, amp_law in enumerate(amp_laws):
        if amp_law not in AMP_LAWS:
            raise LabConfigError(f"unknown amplitude law '{amp_law}'")
        signal = SignalSpec(kind="sparse", k=k, amp_law=amp_law)
        for trial in range(trials):
            trial_seed = derive_seed(seed, law_index, trial)
            for offset, algorithm in enumerate(("l1", "candes")):
                specs.append(
                    TrialSpec(
                        trial_id=2 * (law_index * trials + trial) + offset,
                        seed=trial_seed,
                        algorithm=algorithm,  # type: ignore[arg-type]
                        n=n,
                        m=m,
                        signal=signal,
                        eps_prime=cfg.eps_prime,
                        t_max=cfg.t_max,
                        success_tol=cfg.success_tol,
                        encoding=cfg.encoding,
                        timing=cfg.timing,
                        simplex=cfg.simplex,
                    )
                )

    records = run_trials(specs, workers=cfg.workers)
    outcomes = []
    for law_index, amp_law in enumerate(amp_laws):
        block = records[2 * law_index * trials : 2 * (law_index + 1) * trials]
        plain = [record.success for record in block[0::2]]
        reweighted = [record.success for record in block[1::2]]
        outcome = PairedOutcome(
            amp_law=amp_law,
            trials=trials,
            l1_successes=sum(plain),
            candes_successes=sum(reweighted),
            both=sum(a and b for a, b in zip(plain, reweighted)),
            only_l1=sum(a and not b for a, b in zip(plain, reweighted)),
            only_candes=sum(b and not a for a, b in zip(plain, reweighted)),
        )
        logger.info(
            "%s amplitudes: l1 %d/%d, reweighted %d/%d",
            amp_law,
            outcome.l1_successes,
            trials,
            outcome.candes_successes,
            trials,
        )
        outcomes.append(outcome)
    return ComparisonResult(
        n=n, m=m, k=k, eps_prime=cfg.eps_prime, t_max=cfg.t_max, outcomes=outcomes, records=records
    )
