"""Dense two-phase primal simplex on the bounded-variable formulation.

Every variable of the user problem is mapped to one or two columns with
bounds ``0 <= x' <= u'`` (``u'`` possibly infinite). Nonbasic columns sit at
either bound; basic columns are tracked in a dense ``B^-1 A`` tableau.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import logging

import numpy as np
from numpy.typing import NDArray

from reweightpack.lp.exceptions import LpIterationLimitError, LpNumericalError
from reweightpack.lp.problem import LpProblem, LpSolution, LpStatus, SimplexConfig
from reweightpack.numcore import max_abs

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class _ColumnMap:
    """x_orig[index] += offset + sign * x_std[column]."""

    index: int
    column: int
    sign: float


@dataclass(slots=True)
class _StandardForm:
    a: NDArray[np.float64]
    b: NDArray[np.float64]
    c: NDArray[np.float64]
    upper: NDArray[np.float64]
    offsets: NDArray[np.float64]
    columns: list[_ColumnMap]


@dataclass(slots=True)
class _PivotBudget:
    limit: int
    degenerate_limit: int
    total: int = 0
    degenerate: int = 0
    bland: bool = False

    def spend(self) -> None:
        if self.total >= self.limit:
            raise LpIterationLimitError(
                f"simplex exceeded the pivot cap of {self.limit} iterations"
            )
        self.total += 1

    def record_degenerate(self) -> None:
        self.degenerate += 1
        if not self.bland and self.degenerate > self.degenerate_limit:
            self.bland = True
            logger.warning(
                "switching to Bland's rule after %d degenerate pivots", self.degenerate
            )


@dataclass(slots=True)
class _TableauState:
    a: NDArray[np.float64]
    b: NDArray[np.float64]
    t: NDArray[np.float64]
    upper: NDArray[np.float64]
    x: NDArray[np.float64]
    basis: NDArray[np.int64]
    is_basic: NDArray[np.bool_]
    at_upper: NDArray[np.bool_]
    enterable: NDArray[np.bool_] = field(default_factory=lambda: np.zeros(0, dtype=bool))

    def refresh(self) -> None:
        """Recompute basic values from the nonbasic ones to shed drift."""
        if self.basis.size == 0:
            return
        nonbasic = ~self.is_basic
        rhs = self.b - self.a[:, nonbasic] @ self.x[nonbasic]
        try:
            values = np.linalg.solve(self.a[:, self.basis], rhs)
        except np.linalg.LinAlgError:
            logger.debug("basis refresh skipped: singular basis matrix")
            return
        self.x[self.basis] = values


def solve_lp(problem: LpProblem, *, config: SimplexConfig | None = None) -> LpSolution:
    """Solve an LP to a vertex optimum or a certified infeasible/unbounded verdict."""
    cfg = config or SimplexConfig()
    standard = _standardize(problem)
    m, n_std = standard.a.shape
    budget = _PivotBudget(
        limit=cfg.iteration_cap_factor * (m + n_std),
        degenerate_limit=cfg.bland_after_factor * (m + n_std),
    )

    state = _phase_one_state(standard)
    phase1_cost = np.concatenate([np.zeros(n_std), np.ones(m)])
    _run_phase(state, phase1_cost, budget, cfg)
    phase1_iterations = budget.total

    infeasibility = float(np.sum(state.x[n_std:]))
    if infeasibility > cfg.feasibility_tol * (1.0 + max_abs(standard.b)):
        logger.debug("phase one ended with infeasibility %.3e", infeasibility)
        return _solution(
            problem,
            standard,
            state.x[:n_std],
            status="infeasible",
            budget=budget,
            phase1_iterations=phase1_iterations,
        )

    state = _drop_artificials(state, n_std, cfg)
    status: LpStatus = _run_phase(state, standard.c, budget, cfg)
    state.refresh()
    if status == "optimal":
        _clip_to_bounds(state, cfg)
    solution = _solution(
        problem,
        standard,
        state.x,
        status=status,
        budget=budget,
        phase1_iterations=phase1_iterations,
    )
    if solution.optimal:
        _verify_feasible(problem, solution, cfg)
    return solution


def _standardize(problem: LpProblem) -> _StandardForm:
    a_cols: list[NDArray[np.float64]] = []
    c_std: list[float] = []
    upper_std: list[float] = []
    columns: list[_ColumnMap] = []
    offsets = np.zeros(problem.num_vars)
    rhs = problem.eq_rhs.astype(np.float64).copy()

    for j in range(problem.num_vars):
        column = problem.eq_matrix[:, j]
        cost = float(problem.objective[j])
        lo = float(problem.lower[j])
        hi = float(problem.upper[j])
        if np.isfinite(lo):
            offsets[j] = lo
            rhs -= column * lo
            columns.append(_ColumnMap(index=j, column=len(a_cols), sign=1.0))
            a_cols.append(column)
            c_std.append(cost)
            upper_std.append(hi - lo)
        elif np.isfinite(hi):
            offsets[j] = hi
            rhs -= column * hi
            columns.append(_ColumnMap(index=j, column=len(a_cols), sign=-1.0))
            a_cols.append(-column)
            c_std.append(-cost)
            upper_std.append(np.inf)
        else:
            # free variable: x = x+ - x-
            columns.append(_ColumnMap(index=j, column=len(a_cols), sign=1.0))
            a_cols.append(column)
            c_std.append(cost)
            upper_std.append(np.inf)
            columns.append(_ColumnMap(index=j, column=len(a_cols), sign=-1.0))
            a_cols.append(-column)
            c_std.append(-cost)
            upper_std.append(np.inf)

    m = problem.num_rows
    a = np.column_stack(a_cols) if a_cols else np.zeros((m, 0))
    a = a.reshape(m, len(a_cols))
    flip = rhs < 0
    a[flip] *= -1.0
    rhs[flip] *= -1.0
    return _StandardForm(
        a=a,
        b=rhs,
        c=np.asarray(c_std, dtype=np.float64),
        upper=np.asarray(upper_std, dtype=np.float64),
        offsets=offsets,
        columns=columns,
    )


def _phase_one_state(standard: _StandardForm) -> _TableauState:
    m, n_std = standard.a.shape
    a_aug = np.hstack([standard.a, np.eye(m)])
    x = np.concatenate([np.zeros(n_std), standard.b])
    is_basic = np.zeros(n_std + m, dtype=bool)
    is_basic[n_std:] = True
    return _TableauState(
        a=a_aug,
        b=standard.b.copy(),
        t=a_aug.copy(),
        upper=np.concatenate([standard.upper, np.full(m, np.inf)]),
        x=x,
        basis=np.arange(n_std, n_std + m, dtype=np.int64),
        is_basic=is_basic,
        at_upper=np.zeros(n_std + m, dtype=bool),
        enterable=np.ones(n_std + m, dtype=bool),
    )


def _run_phase(
    state: _TableauState,
    cost: NDArray[np.float64],
    budget: _PivotBudget,
    cfg: SimplexConfig,
) -> LpStatus:
    m = state.t.shape[0]
    while True:
        reduced = cost - cost[state.basis] @ state.t
        movable = (~state.is_basic) & (state.upper > 0.0) & state.enterable
        improving = movable & (
            ((~state.at_upper) & (reduced < -cfg.optimality_tol))
            | (state.at_upper & (reduced > cfg.optimality_tol))
        )
        candidates = np.flatnonzero(improving)
        if candidates.size == 0:
            return "optimal"

        budget.spend()
        if budget.bland:
            entering = int(candidates[0])
        else:
            entering = int(candidates[np.argmax(np.abs(reduced[candidates]))])

        direction = -1.0 if state.at_upper[entering] else 1.0
        delta = -direction * state.t[:, entering]
        x_basic = state.x[state.basis]
        u_basic = state.upper[state.basis]

        limits = np.full(m, np.inf)
        decreasing = delta < -cfg.pivot_tol
        limits[decreasing] = np.maximum(x_basic[decreasing], 0.0) / -delta[decreasing]
        increasing = (delta > cfg.pivot_tol) & np.isfinite(u_basic)
        limits[increasing] = (
            np.maximum(u_basic[increasing] - x_basic[increasing], 0.0) / delta[increasing]
        )
        theta_rows = float(limits.min()) if m else np.inf
        theta_flip = float(state.upper[entering])

        if theta_flip <= theta_rows:
            if not np.isfinite(theta_flip):
                return "unbounded"
            state.x[state.basis] = x_basic + theta_flip * delta
            state.x[entering] = 0.0 if state.at_upper[entering] else theta_flip
            state.at_upper[entering] = not state.at_upper[entering]
            continue

        ties = np.flatnonzero(limits <= theta_rows + cfg.degenerate_tol)
        if budget.bland:
            row = int(ties[np.argmin(state.basis[ties])])
        else:
            row = int(ties[np.argmax(np.abs(delta[ties]))])
        if theta_rows <= cfg.degenerate_tol:
            budget.record_degenerate()

        leaving = int(state.basis[row])
        start = state.upper[entering] if state.at_upper[entering] else 0.0
        state.x[state.basis] = x_basic + theta_rows * delta
        state.x[entering] = start + direction * theta_rows
        leaving_to_upper = bool(delta[row] > 0)
        state.x[leaving] = state.upper[leaving] if leaving_to_upper else 0.0
        state.at_upper[leaving] = leaving_to_upper
        state.at_upper[entering] = False
        state.is_basic[leaving] = False
        state.is_basic[entering] = True
        state.basis[row] = entering
        _pivot(state.t, row, entering)

        if budget.total % cfg.refresh_interval == 0:
            state.refresh()


def _pivot(t: NDArray[np.float64], row: int, column: int) -> None:
    pivot_row = t[row] / t[row, column]
    factors = t[:, column].copy()
    t -= np.outer(factors, pivot_row)
    t[row] = pivot_row


def _drop_artificials(
    state: _TableauState,
    n_std: int,
    cfg: SimplexConfig,
) -> _TableauState:
    """Pivot artificials out of the basis; rows where that fails are redundant."""
    keep_rows: list[int] = []
    for row in range(state.basis.size):
        if state.basis[row] < n_std:
            keep_rows.append(row)
            continue
        weights = np.abs(state.t[row, :n_std])
        weights[state.is_basic[:n_std]] = 0.0
        column = int(np.argmax(weights)) if n_std else 0
        if n_std == 0 or weights[column] <= cfg.pivot_tol:
            logger.debug("dropping redundant equality row %d", row)
            continue
        artificial = int(state.basis[row])
        state.x[artificial] = 0.0
        state.is_basic[artificial] = False
        state.is_basic[column] = True
        state.at_upper[column] = False
        state.basis[row] = column
        _pivot(state.t, row, column)
        keep_rows.append(row)

    rows = np.asarray(keep_rows, dtype=np.int64)
    reduced = _TableauState(
        a=state.a[rows][:, :n_std].copy(),
        b=state.b[rows].copy(),
        t=state.t[rows][:, :n_std].copy(),
        upper=state.upper[:n_std].copy(),
        x=state.x[:n_std].copy(),
        basis=state.basis[rows].copy(),
        is_basic=state.is_basic[:n_std].copy(),
        at_upper=state.at_upper[:n_std].copy(),
        enterable=np.ones(n_std, dtype=bool),
    )
    reduced.refresh()
    return reduced


def _clip_to_bounds(state: _TableauState, cfg: SimplexConfig) -> None:
    below = state.x < 0.0
    above = state.x > state.upper
    worst = max(
        float(np.max(-state.x[below], initial=0.0)),
        float(np.max(state.x[above] - state.upper[above], initial=0.0)),
    )
    if worst > cfg.bound_tol * 1e3:
        raise LpNumericalError(f"optimal basis violates bounds by {worst:.3e}")
    np.clip(state.x, 0.0, state.upper, out=state.x)


def _solution(
    problem: LpProblem,
    standard: _StandardForm,
    x_std: NDArray[np.float64],
    *,
    status: LpStatus,
    budget: _PivotBudget,
    phase1_iterations: int,
) -> LpSolution:
    primal = standard.offsets.copy()
    for mapping in standard.columns:
        primal[mapping.index] += mapping.sign * x_std[mapping.column]
    if status == "optimal":
        value = float(problem.objective @ primal)
    elif status == "unbounded":
        value = -np.inf
    else:
        value = np.inf
    return LpSolution(
        status=status,
        primal=primal,
        objective_value=value,
        iterations=budget.total,
        phase1_iterations=phase1_iterations,
        bland_activated=budget.bland,
    )


def _verify_feasible(problem: LpProblem, solution: LpSolution, cfg: SimplexConfig) -> None:
    residual = max_abs(problem.eq_matrix @ solution.primal - problem.eq_rhs)
    allowed = cfg.feasibility_tol * (1.0 + max_abs(problem.eq_rhs))
    if residual > allowed:
        raise LpNumericalError(
            f"optimal point violates equalities: residual {residual:.3e} > {allowed:.3e}"
        )
