"""Exact 0-1 integer linear programming by branch and bound.

The model is a plain builder (variables, minimization objective, linear
constraints); the solver is depth-first branch and bound with LP-relaxation
bounds from the simplex kernel in ``_simplex``.  Everything is deterministic
under default options: Dantzig pricing with fixed tie-breaks in the LP,
most-fractional branching with lowest-index ties, and the 1-branch explored
first.  Cuts are ordinary constraints appended between solves; every solve
runs from scratch.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ._simplex import (
    LP_INFEASIBLE,
    LP_OPTIMAL,
    lp_core,
)

__all__ = [
    "LinearConstraint",
    "BilpModel",
    "BilpSolution",
    "LpRelaxationResult",
    "SolverOptions",
    "SolveAborted",
    "InternalSolverError",
    "solve_lp_relaxation",
    "solve_bilp",
]

_SENSES = {"<=": -1, "=": 0, "==": 0, ">=": 1}


class SolveAborted(RuntimeError):
    """Raised when a node or time limit stops the search before a proof."""


class InternalSolverError(RuntimeError):
    """A solver self-check failed; indicates a bug, not bad user input."""


@dataclass(frozen=True)
class LinearConstraint:
    """sum(coef * var) sense rhs, with sense one of '<=', '>=', '='."""

    terms: tuple
    sense: str
    rhs: float

    def __post_init__(self):
        terms = tuple((int(v), float(c)) for v, c in self.terms)
        object.__setattr__(self, "terms", terms)
        if self.sense not in _SENSES:
            raise ValueError(f"unknown constraint sense {self.sense!r}")
        seen = set()
        for v, c in terms:
            if v in seen:
                raise ValueError(f"duplicate variable {v} in constraint")
            seen.add(v)
            if not np.isfinite(c):
                raise ValueError("constraint coefficients must be finite")
        if not np.isfinite(self.rhs):
            raise ValueError("constraint rhs must be finite")


class BilpModel:
    """A 0-1 program: binary variables, linear minimization objective,
    linear constraints.  Mutable while being built; solving never mutates."""

    def __init__(self):
        self.num_vars = 0
        self._objective: dict[int, float] = {}
        self.constraints: list[LinearConstraint] = []

    def add_variable(self) -> int:
        """Create a fresh binary variable and return its dense handle."""
        vid = self.num_vars
        self.num_vars += 1
        return vid

    def set_objective_coefficient(self, var: int, coef: float) -> None:
        self._check_var(var)
        coef = float(coef)
        if not np.isfinite(coef):
            raise ValueError("objective coefficients must be finite")
        if coef == 0.0:
            self._objective.pop(var, None)
        else:
            self._objective[var] = coef

    @property
    def objective(self) -> dict[int, float]:
        return dict(self._objective)

    def add_constraint(self, constraint: LinearConstraint) -> None:
        for v, _ in constraint.terms:
            self._check_var(v)
        self.constraints.append(constraint)

    def add_cut(self, constraint: LinearConstraint) -> "BilpModel":
        """Append a cutting plane; assignments violating it become infeasible."""
        self.add_constraint(constraint)
        return self

    def _check_var(self, var: int) -> None:
        if not 0 <= var < self.num_vars:
            raise ValueError(
                f"variable {var} not issued by this model (have {self.num_vars})"
            )

    def compile_arrays(self):
        """Dense (A, b, senses, c) float arrays for the kernel."""
        n = self.num_vars
        m = len(self.constraints)
        A = np.zeros((m, n))
        b = np.empty(m)
        senses = np.empty(m, np.int8)
        for i, con in enumerate(self.constraints):
            for v, c in con.terms:
                A[i, v] = c
            b[i] = con.rhs
            senses[i] = _SENSES[con.sense]
        c = np.zeros(n)
        for v, coef in self._objective.items():
            c[v] = coef
        return A, b, senses, c


@dataclass(frozen=True)
class SolverOptions:
    node_limit: int | None = None
    time_limit_s: float | None = None
    int_tol: float = 1e-9
    max_lp_iter: int = 200_000


@dataclass(frozen=True)
class LpRelaxationResult:
    status: str  # "optimal" | "infeasible"
    value: float | None = None
    point: np.ndarray | None = None


@dataclass(frozen=True)
class BilpSolution:
    status: str  # "optimal" | "infeasible"
    assignment: np.ndarray | None = None
    objective: float | None = None
    nodes_explored: int = 0
    proof_gap: float = 0.0


def _bounds_from_fixings(n: int, fixings) -> tuple[np.ndarray, np.ndarray]:
    lower = np.zeros(n)
    upper = np.ones(n)
    if fixings:
        for var, value in fixings.items():
            if not 0 <= int(var) < n:
                raise ValueError(f"fixing references unknown variable {var}")
            if value not in (0, 1):
                raise ValueError(f"fixings must be 0 or 1, got {value!r}")
            lower[var] = upper[var] = float(value)
    return lower, upper


def solve_lp_relaxation(model: BilpModel, fixings=None) -> LpRelaxationResult:
    """Continuous relaxation over [0,1]^n with optional 0/1 fixings.

    The optimal value is a valid lower bound on every 0-1 completion of the
    fixings.  Unboundedness cannot occur (all variables are bounded) and is
    reported as an internal error.
    """
    A, b, senses, c = model.compile_arrays()
    lower, upper = _bounds_from_fixings(model.num_vars, fixings)
    if model.num_vars == 0:
        return LpRelaxationResult("optimal", 0.0, np.zeros(0))
    status, value, point = lp_core(
        A, b, senses, c, lower, upper, 200_000, np.zeros(model.num_vars)
    )
    if status == LP_OPTIMAL:
        return LpRelaxationResult("optimal", float(value), point)
    if status == LP_INFEASIBLE:
        return LpRelaxationResult("infeasible")
    raise InternalSolverError(f"LP relaxation failed with kernel status {status}")


def _row_integrality(model: BilpModel) -> np.ndarray:
    """True per constraint when all coefficients and the rhs are integers;
    those rows are checked exactly on candidate assignments."""
    flags = np.empty(len(model.constraints), np.bool_)
    for i, con in enumerate(model.constraints):
        ints = all(float(c).is_integer() for _, c in con.terms)
        flags[i] = ints and float(con.rhs).is_integer()
    return flags


def _assignment_satisfies(A, b, senses, int_rows, x) -> bool:
    if A.shape[0] == 0:
        return True
    lhs = A @ x
    tol = np.where(int_rows, 0.0, 1e-9)
    ok_le = lhs <= b + tol
    ok_ge = lhs >= b - tol
    good = np.where(senses < 0, ok_le, np.where(senses > 0, ok_ge, ok_le & ok_ge))
    return bool(np.all(good))


def _can_lex_improve(upper, best_x) -> bool:
    """Whether the node's box still contains a point lexicographically above
    the incumbent: scanning VarId order, the prefix can match the incumbent
    until some variable with incumbent value 0 can still take value 1."""
    for j in range(best_x.shape[0]):
        if best_x[j] == 0:
            if upper[j] > 0.5:
                return True
        elif upper[j] < 0.5:
            return False
    return False


def _first_free_improving(lower, upper, best_x) -> int:
    """Smallest free variable that could lift the assignment above the
    incumbent (exists whenever _can_lex_improve holds after an incumbent
    update at this node)."""
    for j in range(best_x.shape[0]):
        if best_x[j] == 0 and upper[j] > 0.5 and lower[j] < 0.5:
            return j
    return -1


def _lex_greater(a, b) -> bool:
    for j in range(a.shape[0]):
        if a[j] != b[j]:
            return a[j] > b[j]
    return False


def solve_bilp(model: BilpModel, options: SolverOptions | None = None) -> BilpSolution:
    """Solve to proven optimality (or proven infeasibility).

    Depth-first branch and bound with LP-relaxation bounds.  Among
    equal-objective optima the solver returns the lexicographically largest
    assignment vector (VarId order), which makes the result a function of
    the model alone, independent of search order; subtrees that can neither
    beat the incumbent value nor lexicographically improve on it are pruned.
    Hitting a node or time limit raises :class:`SolveAborted` (never
    conflated with infeasibility).
    """
    opts = options or SolverOptions()
    n = model.num_vars
    A, b, senses, c = model.compile_arrays()
    int_rows = _row_integrality(model)

    if n == 0:
        empty = np.zeros(0, dtype=np.int64)
        if _assignment_satisfies(A, b, senses, int_rows, np.zeros(0)):
            return BilpSolution("optimal", empty, 0.0, nodes_explored=0)
        return BilpSolution("infeasible", nodes_explored=0)

    best_x = None
    best_obj = np.inf
    nodes = 0
    started = time.monotonic()

    root_lower = np.zeros(n)
    root_upper = np.ones(n)
    stack = [(root_lower, root_upper, -np.inf, np.zeros(n))]

    while stack:
        # parent_bound is the LP value of the parent node, a valid bound for
        # this child; it prunes without an LP solve when the incumbent has
        # improved since the child was pushed.  hint is the parent's LP
        # point, used to warm the child's simplex start.
        lower, upper, parent_bound, hint = stack.pop()
        if best_x is not None:
            eps = 1e-9 * max(1.0, abs(best_obj))
            if parent_bound >= best_obj + eps:
                continue
            if parent_bound >= best_obj - eps and not _can_lex_improve(
                upper, best_x
            ):
                continue
        if opts.node_limit is not None and nodes >= opts.node_limit:
            raise SolveAborted(f"node limit {opts.node_limit} reached")
        if (
            opts.time_limit_s is not None
            and time.monotonic() - started > opts.time_limit_s
        ):
            raise SolveAborted(f"time limit {opts.time_limit_s}s reached")
        nodes += 1

        status, value, x = lp_core(
            A, b, senses, c, lower, upper, opts.max_lp_iter, hint
        )
        if status == LP_INFEASIBLE:
            continue
        if status != LP_OPTIMAL:
            raise InternalSolverError(f"LP kernel returned status {status}")
        if best_x is not None:
            eps = 1e-9 * max(1.0, abs(best_obj))
            if value >= best_obj + eps:
                continue
            if value >= best_obj - eps and not _can_lex_improve(upper, best_x):
                continue

        frac = np.abs(x - np.rint(x))
        branch_var = int(np.argmax(frac))
        if frac[branch_var] <= opts.int_tol:
            xi = np.rint(x).astype(np.int64)
            xf = xi.astype(float)
            if not _assignment_satisfies(A, b, senses, int_rows, xf):
                raise InternalSolverError(
                    "integral LP point violates a constraint after rounding"
                )
            obj = float(c @ xf)
            if best_x is None:
                best_obj = obj
                best_x = xi
            else:
                eps = 1e-9 * max(1.0, abs(best_obj))
                if obj < best_obj - eps:
                    best_obj = obj
                    best_x = xi
                elif obj <= best_obj + eps and _lex_greater(xi, best_x):
                    best_obj = min(best_obj, obj)
                    best_x = xi
            # An integral point does not exhaust the node: an equal-objective
            # but lexicographically larger assignment may remain in the box,
            # so keep branching while one is possible.
            if _can_lex_improve(upper, best_x):
                branch_var = _first_free_improving(lower, upper, best_x)
                if branch_var >= 0:
                    lo0, up0 = lower.copy(), upper.copy()
                    up0[branch_var] = 0.0
                    lo1, up1 = lower.copy(), upper.copy()
                    lo1[branch_var] = 1.0
                    stack.append((lo0, up0, value, x))
                    stack.append((lo1, up1, value, x))
            continue

        # Children share the parent bounds except the branched variable;
        # the 1-branch is pushed last so it is explored first.
        lo0, up0 = lower.copy(), upper.copy()
        up0[branch_var] = 0.0
        lo1, up1 = lower.copy(), upper.copy()
        lo1[branch_var] = 1.0
        stack.append((lo0, up0, value, x))
        stack.append((lo1, up1, value, x))

    if best_x is None:
        return BilpSolution("infeasible", nodes_explored=nodes)
    if not _assignment_satisfies(A, b, senses, int_rows, best_x.astype(float)):
        raise InternalSolverError("optimal assignment failed the feasibility re-check")
    return BilpSolution(
        "optimal",
        assignment=best_x,
        objective=best_obj,
        nodes_explored=nodes,
        proof_gap=0.0,
    )
