"""Seed-deterministic signal generators."""

from __future__ import annotations

import math

import numpy as np

from reweightpack.core.types import AMP_LAWS, AmpLaw
from reweightpack.numcore import default_rng, normalize_seed, sample_sign_vector
from reweightpack.signals.exceptions import InvalidCountsError, InvalidFractionError
from reweightpack.signals.models import ModelSignal, NonuniformSignal


def generate_model_signal(
    n: int,
    k_strong: int,
    a1: float,
    delta: float,
    k_total: int,
    seed: int,
) -> ModelSignal:
    """Strong entries with |x_i| in [a1, 2 a1]; k_total - k_strong tail entries share delta."""
    if n < 1 or not 0 <= k_strong <= k_total <= n:
        raise InvalidCountsError(
            f"require 0 <= k_strong <= k_total <= n, got k_strong={k_strong}, "
            f"k_total={k_total}, n={n}"
        )
    if not a1 > 0 or not math.isfinite(a1):
        raise InvalidCountsError(f"amplitude floor a1 must be positive, got {a1}")
    if delta < 0 or not math.isfinite(delta):
        raise InvalidCountsError(f"tail mass delta must be non-negative, got {delta}")
    tail_count = k_total - k_strong
    if tail_count > 0 and delta == 0:
        raise InvalidCountsError("tail entries need a positive tail mass delta")

    rng = default_rng(seed)
    order = rng.permutation(n)
    strong = np.sort(order[:k_strong])
    tail = np.sort(order[k_strong:k_total])

    x = np.zeros(n)
    x[strong] = rng.uniform(a1, 2.0 * a1, size=k_strong) * sample_sign_vector(rng, k_strong)
    if tail_count:
        x[tail] = (delta / tail_count) * sample_sign_vector(rng, tail_count)

    signal = ModelSignal(
        x=x,
        strong_set=tuple(int(i) for i in strong),
        amplitude_floor=float(a1),
        tail_mass=float(delta),
        support=tuple(int(i) for i in np.flatnonzero(x)),
        seed=normalize_seed(seed),
    )
    signal.check_invariants()
    return signal


def gaussian_sparse_signal(n: int, k: int, seed: int, *, amp_law: AmpLaw = "gaussian") -> ModelSignal:
    """Exactly k-sparse signal with i.i.d. N(0,1) or +/-1 amplitudes and no tail."""
    if n < 1 or not 0 <= k <= n:
        raise InvalidCountsError(f"require 0 <= k <= n, got k={k}, n={n}")
    _check_amp_law(amp_law)
    rng = default_rng(seed)
    positions = np.sort(rng.permutation(n)[:k])
    x = np.zeros(n)
    x[positions] = _amplitudes(rng, k, amp_law)
    floor = float(np.min(np.abs(x[positions]))) if k else 1.0
    signal = ModelSignal(
        x=x,
        strong_set=tuple(int(i) for i in positions),
        amplitude_floor=floor,
        tail_mass=0.0,
        support=tuple(int(i) for i in np.flatnonzero(x)),
        seed=normalize_seed(seed),
    )
    signal.check_invariants()
    return signal


def generate_nonuniform_signal(
    n: int,
    gamma1: float,
    p1: float,
    p2: float,
    amp_law: AmpLaw,
    seed: int,
) -> NonuniformSignal:
    """Class 1 is the first floor(gamma1 n) indices of a seeded permutation."""
    _check_fractions(gamma1=gamma1, p1=p1, p2=p2)
    _check_amp_law(amp_law)
    if n < 1:
        raise InvalidCountsError(f"signal length must be positive, got {n}")

    rng = default_rng(seed)
    order = rng.permutation(n)
    n1 = int(math.floor(gamma1 * n))
    class1 = np.sort(order[:n1])
    class2 = np.sort(order[n1:])

    probabilities = np.empty(n)
    probabilities[class1] = p1
    probabilities[class2] = p2
    active = rng.random(n) < probabilities
    x = np.zeros(n)
    x[active] = _amplitudes(rng, int(np.count_nonzero(active)), amp_law)

    return NonuniformSignal(
        x=x,
        class1=tuple(int(i) for i in class1),
        class2=tuple(int(i) for i in class2),
        p1=float(p1),
        p2=float(p2),
        amp_law=amp_law,
        seed=normalize_seed(seed),
    )


def generate_block_signal(
    n: int,
    block_size: int,
    p1: float,
    p2: float,
    a1: float,
    delta: float,
    seed: int,
) -> ModelSignal:
    """Dense strong block (probability p1) over a sparse small-amplitude remainder (p2).

    Nonzero block entries form the strong set; the remainder shares the tail
    mass delta equally, as in `generate_model_signal`.
    """
    _check_fractions(p1=p1, p2=p2)
    if n < 1 or not 0 <= block_size <= n:
        raise InvalidCountsError(f"require 0 <= block_size <= n, got {block_size}, n={n}")
    if not a1 > 0:
        raise InvalidCountsError(f"amplitude floor a1 must be positive, got {a1}")
    if delta < 0:
        raise InvalidCountsError(f"tail mass delta must be non-negative, got {delta}")

    rng = default_rng(seed)
    order = rng.permutation(n)
    block = np.sort(order[:block_size])
    rest = np.sort(order[block_size:])

    strong = block[rng.random(block.size) < p1]
    tail = rest[rng.random(rest.size) < p2]
    if tail.size and delta == 0:
        raise InvalidCountsError("tail entries need a positive tail mass delta")

    x = np.zeros(n)
    x[strong] = rng.uniform(a1, 2.0 * a1, size=strong.size) * sample_sign_vector(rng, strong.size)
    if tail.size:
        x[tail] = (delta / tail.size) * sample_sign_vector(rng, tail.size)

    signal = ModelSignal(
        x=x,
        strong_set=tuple(int(i) for i in strong),
        amplitude_floor=float(a1),
        tail_mass=float(delta),
        support=tuple(int(i) for i in np.flatnonzero(x)),
        seed=normalize_seed(seed),
    )
    signal.check_invariants()
    return signal


def expected_nonzeros(n: int, gamma1: float, p1: float, p2: float) -> float:
    """n (gamma1 p1 + (1 - gamma1) p2)."""
    _check_fractions(gamma1=gamma1, p1=p1, p2=p2)
    return n * (gamma1 * p1 + (1.0 - gamma1) * p2)


def _amplitudes(rng: np.random.Generator, size: int, amp_law: AmpLaw) -> np.ndarray:
    if amp_law == "flat":
        return sample_sign_vector(rng, size)
    values = rng.standard_normal(size)
    # an exact zero would silently shrink the support
    values[values == 0.0] = np.finfo(np.float64).tiny
    return values


def _check_fractions(**fractions: float) -> None:
    for name, value in fractions.items():
        if not 0.0 <= value <= 1.0:
            raise InvalidFractionError(f"{name} must lie in [0, 1], got {value}")


def _check_amp_law(amp_law: str) -> None:
    if amp_law not in AMP_LAWS:
        raise InvalidFractionError(
            f"unknown amplitude law '{amp_law}'. Expected one of: {', '.join(AMP_LAWS)}"
        )
