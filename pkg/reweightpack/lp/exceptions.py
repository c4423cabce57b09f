"""Linear-programming subsystem exceptions."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from reweightpack.lp.problem import LpSolution


class LpError(Exception):
    """Base class for LP errors."""


class LpProblemError(LpError):
    """LP problem is malformed (shapes, bounds)."""


class NonPositiveWeightError(LpProblemError):
    """Weighted l1 objective received a weight <= 0."""


class LpIterationLimitError(LpError):
    """Simplex exceeded its pivot budget before reaching a verdict."""


class LpNumericalError(LpError):
    """Reported optimum failed the post-solve feasibility check."""


class LpStatusError(LpError):
    """Solver verdict was not optimal where an optimum was required."""

    def __init__(self, message: str, solution: "LpSolution") -> None:
        super().__init__(message)
        self.solution = solution


class LpInfeasibleError(LpStatusError):
    """Equality system has no solution within the bounds."""


class LpUnboundedError(LpStatusError):
    """Objective is unbounded below on the feasible set."""
