"""Single Monte Carlo trials, their records and the ordered parallel runner."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import logging
from pathlib import Path
import time
from typing import Any, Callable, Iterable, Literal, Sequence, TypeVar

import numpy as np

from reweightpack.artifact import parse_csv_bool, read_csv, write_csv
from reweightpack.core.types import AmpLaw, Algorithm, L1Encoding
from reweightpack.lab.exceptions import LabConfigError, TrialLogIntegrityError
from reweightpack.lp import SimplexConfig
from reweightpack.numcore import derive_seed, sample_gaussian_matrix
from reweightpack.recover import SUCCESS_TOLERANCE, WeightVector, run_algorithm
from reweightpack.signals import (
    generate_block_signal,
    generate_model_signal,
    generate_nonuniform_signal,
    gaussian_sparse_signal,
)

logger = logging.getLogger(__name__)

TRIAL_LOG_HEADER: tuple[str, ...] = (
    "trial_id",
    "seed",
    "algo",
    "n",
    "m",
    "delta",
    "k_strong",
    "k_total",
    "a1",
    "tail_mass",
    "W",
    "success",
    "rel_l2_error",
    "l1_error",
    "runtime_ms",
)

SignalKind = Literal["sparse", "model", "block", "nonuniform"]

MATRIX_STREAM = 0
SIGNAL_STREAM = 1

_T = TypeVar("_T")
_R = TypeVar("_R")


@dataclass(frozen=True, slots=True)
class SignalSpec:
    """Parameters of one signal family; unused fields keep their defaults."""

    kind: SignalKind
    k: int = 0
    k_strong: int = 0
    k_total: int = 0
    a1: float = 1.0
    tail_mass: float = 0.0
    block_size: int = 0
    gamma1: float = 0.0
    p1: float = 0.0
    p2: float = 0.0
    amp_law: AmpLaw = "gaussian"


@dataclass(frozen=True, slots=True)
class TrialSpec:
    """Everything one trial needs; picklable so trials can run in worker processes.

    The measurement matrix and the signal come from independent streams derived
    from `seed`, so trials sharing a seed share their instance.
    """

    trial_id: int
    seed: int
    algorithm: Algorithm
    n: int
    m: int
    signal: SignalSpec
    W: float = 1.0
    k_select: int = 0
    eps_prime: float = 0.1
    t_max: int = 4
    success_tol: float = SUCCESS_TOLERANCE
    encoding: L1Encoding = "split"
    timing: bool = True
    simplex: SimplexConfig | None = None


@dataclass(frozen=True, slots=True)
class TrialRecord:
    trial_id: int
    seed: int
    algorithm: Algorithm
    n: int
    m: int
    delta: float
    k_strong: int
    k_total: int
    a1: float
    tail_mass: float
    W: float
    success: bool
    rel_l2_error: float
    l1_error: float
    runtime_ms: float

    def csv_row(self) -> tuple[Any, ...]:
        return (
            self.trial_id,
            self.seed,
            self.algorithm,
            self.n,
            self.m,
            self.delta,
            self.k_strong,
            self.k_total,
            self.a1,
            self.tail_mass,
            self.W,
            self.success,
            self.rel_l2_error,
            self.l1_error,
            self.runtime_ms,
        )

    def to_dict(self) -> dict[str, Any]:
        return dict(zip(TRIAL_LOG_HEADER, self.csv_row()))

    @classmethod
    def from_csv_row(cls, row: Sequence[str]) -> "TrialRecord":
        values = dict(zip(TRIAL_LOG_HEADER, row))
        return cls(
            trial_id=int(values["trial_id"]),
            seed=int(values["seed"]),
            algorithm=values["algo"],  # type: ignore[arg-type]
            n=int(values["n"]),
            m=int(values["m"]),
            delta=float(values["delta"]),
            k_strong=int(values["k_strong"]),
            k_total=int(values["k_total"]),
            a1=float(values["a1"]),
            tail_mass=float(values["tail_mass"]),
            W=float(values["W"]),
            success=parse_csv_bool(values["success"]),
            rel_l2_error=float(values["rel_l2_error"]),
            l1_error=float(values["l1_error"]),
            runtime_ms=float(values["runtime_ms"]),
        )


def execute_trial(spec: TrialSpec) -> TrialRecord:
    """Sample the instance, recover, and score against the true signal."""
    started = time.perf_counter()
    a = sample_gaussian_matrix(spec.m, spec.n, derive_seed(spec.seed, MATRIX_STREAM))
    x, weights, k_strong, a1, tail_mass = _build_signal(spec)
    y = a @ x

    result = run_algorithm(
        spec.algorithm,
        a,
        y,
        weights=weights,
        eps_prime=spec.eps_prime,
        t_max=spec.t_max,
        k_strong=spec.k_select,
        W=spec.W,
        encoding=spec.encoding,
        config=spec.simplex,
    )
    rel_error = result.relative_l2_error(x)
    runtime_ms = (time.perf_counter() - started) * 1000.0 if spec.timing else 0.0
    record = TrialRecord(
        trial_id=spec.trial_id,
        seed=spec.seed,
        algorithm=spec.algorithm,
        n=spec.n,
        m=spec.m,
        delta=spec.m / spec.n,
        k_strong=k_strong,
        k_total=int(np.count_nonzero(x)),
        a1=a1,
        tail_mass=tail_mass,
        W=spec.W if spec.algorithm in ("modified", "weighted") else 1.0,
        success=rel_error <= spec.success_tol,
        rel_l2_error=rel_error,
        l1_error=result.l1_error(x),
        runtime_ms=runtime_ms,
    )
    logger.debug(
        "trial %d (%s): success=%s rel_l2=%.3e", record.trial_id, record.algorithm, record.success, rel_error
    )
    return record


def _build_signal(spec: TrialSpec) -> tuple[np.ndarray, WeightVector | None, int, float, float]:
    """(x, weights for the weighted solver, k_strong, a1, tail mass) for the trial's signal."""
    signal = spec.signal
    seed = derive_seed(spec.seed, SIGNAL_STREAM)
    if signal.kind == "sparse":
        model = gaussian_sparse_signal(spec.n, signal.k, seed, amp_law=signal.amp_law)
        return model.x, None, model.k_strong, model.amplitude_floor, 0.0
    if signal.kind == "model":
        model = generate_model_signal(
            spec.n, signal.k_strong, signal.a1, signal.tail_mass, signal.k_total, seed
        )
        return model.x, None, model.k_strong, model.amplitude_floor, model.tail_mass
    if signal.kind == "block":
        model = generate_block_signal(
            spec.n, signal.block_size, signal.p1, signal.p2, signal.a1, signal.tail_mass, seed
        )
        return model.x, None, model.k_strong, model.amplitude_floor, model.tail_mass
    if signal.kind == "nonuniform":
        nonuniform = generate_nonuniform_signal(
            spec.n, signal.gamma1, signal.p1, signal.p2, signal.amp_law, seed
        )
        weights = WeightVector.two_level(
            spec.n, nonuniform.class1, inner_weight=1.0, outer_weight=spec.W
        )
        favoured = int(np.count_nonzero(nonuniform.x[list(nonuniform.class1)])) if nonuniform.class1 else 0
        support = nonuniform.support
        floor = float(np.min(np.abs(nonuniform.x[list(support)]))) if support else 0.0
        return nonuniform.x, weights, favoured, floor, 0.0
    raise LabConfigError(f"unknown signal kind '{signal.kind}'")


def ordered_map(function: Callable[[_T], _R], items: Sequence[_T], *, workers: int = 1) -> list[_R]:
    """Map in input order; more than one worker fans out to a process pool."""
    if workers <= 1 or len(items) <= 1:
        return [function(item) for item in items]
    chunksize = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(function, items, chunksize=chunksize))


def run_trials(specs: Sequence[TrialSpec], *, workers: int = 1) -> list[TrialRecord]:
    """Execute trials and return their records sorted by trial_id."""
    records = ordered_map(execute_trial, specs, workers=workers)
    return sorted(records, key=lambda record: record.trial_id)


def write_trial_log(path: str | Path, records: Iterable[TrialRecord]) -> Path:
    return write_csv(path, TRIAL_LOG_HEADER, (record.csv_row() for record in records))


def read_trial_log(path: str | Path, *, success_tol: float = SUCCESS_TOLERANCE) -> list[TrialRecord]:
    """Parse a trial log and recheck every success flag against its stored error."""
    _, rows, _ = read_csv(path, expected_header=TRIAL_LOG_HEADER)
    records = [TrialRecord.from_csv_row(row) for row in rows]
    for record in records:
        expected = record.rel_l2_error <= success_tol
        if record.success != expected:
            raise TrialLogIntegrityError(
                f"trial {record.trial_id}: stored success={record.success} but "
                f"rel_l2_error={record.rel_l2_error!r} implies {expected}"
            )
    return records


def count_successes(records: Iterable[TrialRecord]) -> tuple[int, int]:
    successes = 0
    total = 0
    for record in records:
        total += 1
        successes += int(record.success)
    return successes, total
