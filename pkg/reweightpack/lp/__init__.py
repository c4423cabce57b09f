"""Dense LP solver and l1 reformulations."""

from reweightpack.lp.exceptions import (
    LpError,
    LpInfeasibleError,
    LpIterationLimitError,
    LpNumericalError,
    LpProblemError,
    LpStatusError,
    LpUnboundedError,
    NonPositiveWeightError,
)
from reweightpack.lp.l1 import (
    L1Solution,
    l1_minimize,
    solve_weighted_l1,
    validate_weights,
    weighted_l1_minimize,
)
from reweightpack.lp.problem import LpProblem, LpSolution, LpStatus, SimplexConfig
from reweightpack.lp.simplex import solve_lp

__all__ = [
    "LpError",
    "LpProblemError",
    "NonPositiveWeightError",
    "LpIterationLimitError",
    "LpNumericalError",
    "LpStatusError",
    "LpInfeasibleError",
    "LpUnboundedError",
    "LpProblem",
    "LpSolution",
    "LpStatus",
    "SimplexConfig",
    "L1Solution",
    "solve_lp",
    "solve_weighted_l1",
    "l1_minimize",
    "weighted_l1_minimize",
    "validate_weights",
]
