"""Harness configuration."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
import os
from typing import Any

from reweightpack.core.types import L1_ENCODINGS, L1Encoding
from reweightpack.lab.exceptions import LabConfigError
from reweightpack.lp import SimplexConfig

WORKERS_ENV_VAR = "REWEIGHTKIT_WORKERS"


@dataclass(frozen=True, slots=True)
class LabConfig:
    """Desk-scale experiment defaults."""

    n: int = 200
    trials_per_point: int = 100
    grid_points: int = 11
    W: float = 10.0
    eps: float = 0.01
    eps_prime: float = 0.1
    t_max: int = 4
    a1: float = 1.0
    tail_mass: float = 0.1
    success_tol: float = 1e-4
    workers: int = 1
    p2_bisection_steps: int = 8
    encoding: L1Encoding = "split"
    timing: bool = True
    simplex: SimplexConfig = field(default_factory=SimplexConfig)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise LabConfigError("n must be at least 2")
        if self.trials_per_point < 1:
            raise LabConfigError("trials_per_point must be positive")
        if self.grid_points < 2:
            raise LabConfigError("grid_points must be at least 2")
        if not self.W >= 1.0:
            raise LabConfigError("W must be >= 1")
        if not 0.0 < self.eps < 1.0:
            raise LabConfigError("eps must lie in (0, 1)")
        if not self.eps_prime > 0.0:
            raise LabConfigError("eps_prime must be positive")
        if self.t_max < 0:
            raise LabConfigError("t_max must be non-negative")
        if not self.a1 > 0.0 or self.tail_mass < 0.0:
            raise LabConfigError("a1 must be positive and tail_mass non-negative")
        if not self.success_tol > 0.0:
            raise LabConfigError("success_tol must be positive")
        if self.workers < 1:
            raise LabConfigError("workers must be >= 1")
        if self.p2_bisection_steps < 1:
            raise LabConfigError("p2_bisection_steps must be >= 1")
        if self.encoding not in L1_ENCODINGS:
            raise LabConfigError(f"unknown l1 encoding '{self.encoding}'")

    @classmethod
    def from_env(cls, **overrides: Any) -> "LabConfig":
        """Defaults with the worker count taken from REWEIGHTKIT_WORKERS when set."""
        raw = os.getenv(WORKERS_ENV_VAR, "").strip()
        if raw and "workers" not in overrides:
            try:
                overrides["workers"] = int(raw)
            except ValueError as error:
                raise LabConfigError(f"{WORKERS_ENV_VAR} must be an integer, got {raw!r}") from error
        return cls(**overrides)

    def with_overrides(self, **overrides: Any) -> "LabConfig":
        present = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **present)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "trials_per_point": self.trials_per_point,
            "grid_points": self.grid_points,
            "W": self.W,
            "eps": self.eps,
            "eps_prime": self.eps_prime,
            "t_max": self.t_max,
            "a1": self.a1,
            "tail_mass": self.tail_mass,
            "success_tol": self.success_tol,
            "p2_bisection_steps": self.p2_bisection_steps,
            "encoding": self.encoding,
        }
