"""Signal models carrying the metadata later bound checks need."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from reweightpack.core.types import AmpLaw
from reweightpack.numcore import DenseVector, IndexSet, complement, restricted_l1
from reweightpack.signals.exceptions import SignalInvariantError


@dataclass(frozen=True, slots=True)
class ModelSignal:
    """Strong set K with amplitudes >= a1 plus a tail of l1 mass <= delta."""

    x: DenseVector = field(repr=False)
    strong_set: IndexSet
    amplitude_floor: float
    tail_mass: float
    support: IndexSet
    seed: int | None = None

    @property
    def n(self) -> int:
        return int(self.x.shape[0])

    @property
    def k_strong(self) -> int:
        return len(self.strong_set)

    @property
    def k_total(self) -> int:
        return len(self.support)

    @property
    def weak_set(self) -> IndexSet:
        return complement(self.strong_set, self.n)

    @property
    def tail_l1(self) -> float:
        """Actual l1 mass off the strong set."""
        return restricted_l1(self.x, self.weak_set)

    def check_invariants(self) -> None:
        """Raise SignalInvariantError when the model's defining invariants are broken."""
        strong = list(self.strong_set)
        if strong and np.min(np.abs(self.x[strong])) < self.amplitude_floor:
            raise SignalInvariantError("strong entry below amplitude floor")
        if self.tail_l1 > self.tail_mass * (1.0 + 1e-12) + 1e-15:
            raise SignalInvariantError("tail l1 mass exceeds the declared bound")
        nonzeros = tuple(int(i) for i in np.flatnonzero(self.x))
        if nonzeros != self.support:
            raise SignalInvariantError("support metadata does not match nonzeros")
        if not set(self.strong_set) <= set(self.support):
            raise SignalInvariantError("strong set is not contained in the support")

    def metadata(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "K": list(self.strong_set),
            "a1": self.amplitude_floor,
            "delta": self.tail_mass,
            "K_total": list(self.support),
            "seed": self.seed,
        }


@dataclass(frozen=True, slots=True)
class NonuniformSignal:
    """Two-class signal; class i entries are nonzero with probability p_i."""

    x: DenseVector = field(repr=False)
    class1: IndexSet
    class2: IndexSet
    p1: float
    p2: float
    amp_law: AmpLaw
    seed: int | None = None

    @property
    def n(self) -> int:
        return int(self.x.shape[0])

    @property
    def gamma1(self) -> float:
        return len(self.class1) / self.n if self.n else 0.0

    @property
    def support(self) -> IndexSet:
        return tuple(int(i) for i in np.flatnonzero(self.x))

    def nonzero_fraction(self, which: int) -> float:
        members = list(self.class1 if which == 1 else self.class2)
        if not members:
            return 0.0
        return float(np.count_nonzero(self.x[members])) / len(members)

    def metadata(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "class1": list(self.class1),
            "class2": list(self.class2),
            "p1": self.p1,
            "p2": self.p2,
            "amp_law": self.amp_law,
            "seed": self.seed,
        }
