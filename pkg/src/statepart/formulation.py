"""Translate a partitioning problem into a 0-1 linear program and back.

Primary variables are the entries of the grouping matrices alpha and beta.
The bilinear objective terms alpha_pi*(1 - alpha_pj) and
alpha_pi*(1 - beta_pk) are replaced by auxiliary binaries (gamma, delta),
each pinned to the product value by four inequalities, so the linear
objective agrees with the nonlinear metric at every binary point.
Auxiliary variables are created only where the corresponding model entry
is nonzero, and never on the A diagonal (same-state terms vanish
identically).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bilp import BilpModel, BilpSolution, InternalSolverError, LinearConstraint
from .model import GroupingPair, StateSpaceModel, validate_problem

__all__ = [
    "VariableIndex",
    "build_partitioning_bilp",
    "decode_solution",
    "canonicalize",
]

DEFAULT_ZERO_TOL = 1e-15


@dataclass(frozen=True)
class VariableIndex:
    """Maps grouping/auxiliary coordinates to solver variable ids.

    gamma exists for (p, i, j) with a_ij nonzero and i != j; delta for
    (p, i, k) with b_ik nonzero.  The index is immutable after build.
    """

    n_groups: int
    n_states: int
    n_inputs: int
    alpha: np.ndarray  # (P, N) variable ids
    beta: np.ndarray  # (P, M) variable ids
    gamma: dict = field(default_factory=dict)  # (p, i, j) -> var id
    delta: dict = field(default_factory=dict)  # (p, i, k) -> var id

    @property
    def num_variables(self) -> int:
        return (
            self.alpha.size + self.beta.size + len(self.gamma) + len(self.delta)
        )


def build_partitioning_bilp(
    model: StateSpaceModel,
    n_groups: int,
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> tuple[BilpModel, VariableIndex]:
    """Build the exact linearized partitioning program.

    Rows: each group keeps at least one state and one input; each state and
    each input belongs to exactly one group (the <=1 / >=1 column pairs are
    merged into equalities); four pinning inequalities per auxiliary
    variable.  Objective: sum of gamma/delta variables weighted by the
    corresponding |a_ij| / |b_ik|, so all coefficients are strictly
    positive.  Entries with magnitude <= zero_tol count as structural zeros.
    """
    validate_problem(model, n_groups)
    P, N, M = n_groups, model.n_states, model.n_inputs
    absA = np.abs(model.A)
    absB = np.abs(model.B)

    bm = BilpModel()
    alpha_vars = np.array(
        [[bm.add_variable() for _ in range(N)] for _ in range(P)], dtype=np.int64
    )
    beta_vars = np.array(
        [[bm.add_variable() for _ in range(M)] for _ in range(P)], dtype=np.int64
    )
    gamma_vars: dict = {}
    delta_vars: dict = {}
    for p in range(P):
        for i in range(N):
            for j in range(N):
                if i != j and absA[i, j] > zero_tol:
                    gamma_vars[(p, i, j)] = bm.add_variable()
    for p in range(P):
        for i in range(N):
            for k in range(M):
                if absB[i, k] > zero_tol:
                    delta_vars[(p, i, k)] = bm.add_variable()

    # No group may be empty on either side.
    for p in range(P):
        bm.add_constraint(
            LinearConstraint(tuple((alpha_vars[p, i], 1.0) for i in range(N)), ">=", 1.0)
        )
    for p in range(P):
        bm.add_constraint(
            LinearConstraint(tuple((beta_vars[p, k], 1.0) for k in range(M)), ">=", 1.0)
        )
    # Exactly one group per state and per input.
    for i in range(N):
        bm.add_constraint(
            LinearConstraint(tuple((alpha_vars[p, i], 1.0) for p in range(P)), "=", 1.0)
        )
    for k in range(M):
        bm.add_constraint(
            LinearConstraint(tuple((beta_vars[p, k], 1.0) for p in range(P)), "=", 1.0)
        )

    # Four inequalities pin each auxiliary to its product value at every
    # binary point (not only at optima).
    for (p, i, j), g in gamma_vars.items():
        a1 = alpha_vars[p, i]
        a2 = alpha_vars[p, j]
        _add_product_rows(bm, g, a1, a2)
    for (p, i, k), dvar in delta_vars.items():
        a1 = alpha_vars[p, i]
        b2 = beta_vars[p, k]
        _add_product_rows(bm, dvar, a1, b2)

    for (p, i, j), g in gamma_vars.items():
        bm.set_objective_coefficient(g, float(absA[i, j]))
    for (p, i, k), dvar in delta_vars.items():
        bm.set_objective_coefficient(dvar, float(absB[i, k]))

    index = VariableIndex(
        n_groups=P,
        n_states=N,
        n_inputs=M,
        alpha=alpha_vars,
        beta=beta_vars,
        gamma=gamma_vars,
        delta=delta_vars,
    )
    return bm, index


def _add_product_rows(bm: BilpModel, aux: int, u: int, v: int) -> None:
    """aux == u * (1 - v) at every binary (u, v)."""
    bm.add_constraint(LinearConstraint(((aux, 1.0), (u, -1.0), (v, -1.0)), "<=", 0.0))
    bm.add_constraint(LinearConstraint(((aux, 1.0), (u, -1.0), (v, 1.0)), "<=", 1.0))
    bm.add_constraint(LinearConstraint(((aux, 1.0), (u, -1.0), (v, 1.0)), ">=", 0.0))
    bm.add_constraint(LinearConstraint(((aux, 1.0), (u, 1.0), (v, 1.0)), "<=", 2.0))


def decode_solution(solution: BilpSolution, index: VariableIndex) -> GroupingPair:
    """Read the grouping matrices out of an optimal assignment.

    Also re-checks that every auxiliary variable equals its defining binary
    product; a violation means the solver or formulation is broken, so it
    raises :class:`InternalSolverError` rather than a user-facing error.
    """
    if solution.status != "optimal":
        raise ValueError(f"cannot decode a solution with status {solution.status!r}")
    x = solution.assignment
    alpha = x[index.alpha]
    beta = x[index.beta]
    try:
        grouping = GroupingPair(alpha=alpha, beta=beta)
    except ValueError as exc:
        raise InternalSolverError(f"decoded grouping is invalid: {exc}") from exc
    for (p, i, j), g in index.gamma.items():
        expected = alpha[p, i] * (1 - alpha[p, j])
        if x[g] != expected:
            raise InternalSolverError(
                f"auxiliary state variable ({p},{i},{j}) = {x[g]} "
                f"but the product value is {expected}"
            )
    for (p, i, k), dvar in index.delta.items():
        expected = alpha[p, i] * (1 - beta[p, k])
        if x[dvar] != expected:
            raise InternalSolverError(
                f"auxiliary input variable ({p},{i},{k}) = {x[dvar]} "
                f"but the product value is {expected}"
            )
    return grouping


def canonicalize(grouping: GroupingPair) -> GroupingPair:
    """Relabel groups in first-appearance order over states then inputs.

    Idempotent; two groupings describe the same partitioning exactly when
    their canonical forms are identical.
    """
    state_labels = np.argmax(grouping.alpha, axis=0)
    input_labels = np.argmax(grouping.beta, axis=0)
    order: list[int] = []
    for label in list(state_labels) + list(input_labels):
        label = int(label)
        if label not in order:
            order.append(label)
    new_alpha = np.vstack([grouping.alpha[old] for old in order])
    new_beta = np.vstack([grouping.beta[old] for old in order])
    return GroupingPair(alpha=new_alpha, beta=new_beta)
