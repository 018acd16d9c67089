"""State-space model types, partition extraction, interaction metrics,
and the per-subsystem controllability test.

A partitioning is held as a pair of binary grouping matrices: ``alpha``
(groups x states) and ``beta`` (groups x inputs), each column selecting
the single group its state or input belongs to.  Interaction cost is the
total magnitude of the A entries linking states in different groups plus
the B entries linking a group's states to other groups' inputs; it is
implemented both block-wise and element-wise and the two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import abs_sum, as_matrix, hconcat, mat_mul, numerical_rank

__all__ = [
    "StateSpaceModel",
    "GroupingPair",
    "Subsystem",
    "validate_problem",
    "extract_partition",
    "interaction_cost_blocks",
    "interaction_cost_elements",
    "controllability_matrix",
    "is_controllable",
    "group_labels",
]


@dataclass(frozen=True, eq=False)
class StateSpaceModel:
    """The pair (A, B) of an LTI model xdot = A x + B u."""

    A: np.ndarray
    B: np.ndarray
    name: str = ""

    def __post_init__(self):
        A = as_matrix(self.A, "A")
        B = as_matrix(self.B, "B")
        if A.shape[0] != A.shape[1]:
            raise ValueError(f"A must be square, got shape {A.shape}")
        if B.shape[0] != A.shape[0]:
            raise ValueError(
                f"A and B must have the same row count, got {A.shape} and {B.shape}"
            )
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def n_states(self) -> int:
        return self.A.shape[0]

    @property
    def n_inputs(self) -> int:
        return self.B.shape[1]


@dataclass(frozen=True, eq=False)
class GroupingPair:
    """Binary grouping matrices alpha (P x N) and beta (P x M).

    Invariants enforced here: every column sums to exactly one (each state
    and input sits in exactly one group) and every row sums to at least one
    (no group is empty on either side).
    """

    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        alpha = _check_grouping_matrix(self.alpha, "alpha")
        beta = _check_grouping_matrix(self.beta, "beta")
        if alpha.shape[0] != beta.shape[0]:
            raise ValueError(
                f"alpha has {alpha.shape[0]} groups but beta has {beta.shape[0]}"
            )
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def n_groups(self) -> int:
        return self.alpha.shape[0]

    @property
    def n_states(self) -> int:
        return self.alpha.shape[1]

    @property
    def n_inputs(self) -> int:
        return self.beta.shape[1]


def _check_grouping_matrix(mat, name: str) -> np.ndarray:
    arr = np.asarray(mat)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-D binary matrix")
    arr = arr.astype(np.int64)
    if not np.all((arr == 0) | (arr == 1)):
        raise ValueError(f"{name} entries must be 0 or 1")
    col_sums = arr.sum(axis=0)
    if not np.all(col_sums == 1):
        bad = int(np.flatnonzero(col_sums != 1)[0])
        raise ValueError(
            f"{name} column {bad + 1} sums to {int(col_sums[bad])}, expected 1"
        )
    row_sums = arr.sum(axis=1)
    if not np.all(row_sums >= 1):
        bad = int(np.flatnonzero(row_sums < 1)[0])
        raise ValueError(f"{name} row {bad + 1} is empty; every group needs a member")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Subsystem:
    """One group's decoupled block: indices plus the extracted A_pp, B_pp."""

    group_index: int
    state_indices: np.ndarray  # strictly increasing, 0-based
    input_indices: np.ndarray
    A_pp: np.ndarray
    B_pp: np.ndarray

    @property
    def n_states(self) -> int:
        return len(self.state_indices)

    @property
    def n_inputs(self) -> int:
        return len(self.input_indices)


def validate_problem(model: StateSpaceModel, n_groups: int) -> None:
    """Check the natural bound on the group count: 1 < P <= min(N, M)."""
    n, m = model.n_states, model.n_inputs
    if not 1 < n_groups <= min(n, m):
        raise ValueError(
            f"group count must satisfy 1 < P <= min(N, M) = {min(n, m)}; "
            f"got P={n_groups} for N={n}, M={m}"
        )


def _check_dims(model: StateSpaceModel, grouping: GroupingPair) -> None:
    if grouping.n_states != model.n_states or grouping.n_inputs != model.n_inputs:
        raise ValueError(
            f"grouping is for {grouping.n_states} states / {grouping.n_inputs} "
            f"inputs, model has {model.n_states} / {model.n_inputs}"
        )


def extract_partition(model: StateSpaceModel, grouping: GroupingPair) -> list[Subsystem]:
    """Split the model into the P subsystems selected by the grouping.

    The state index sets partition {1..N} and the input sets partition
    {1..M}; each subsystem carries the corresponding diagonal blocks.
    """
    _check_dims(model, grouping)
    subsystems = []
    for p in range(grouping.n_groups):
        states = np.flatnonzero(grouping.alpha[p])
        inputs = np.flatnonzero(grouping.beta[p])
        subsystems.append(
            Subsystem(
                group_index=p,
                state_indices=states,
                input_indices=inputs,
                A_pp=model.A[np.ix_(states, states)],
                B_pp=model.B[np.ix_(states, inputs)],
            )
        )
    return subsystems


def interaction_cost_blocks(model: StateSpaceModel, grouping: GroupingPair) -> float:
    """Coupling metric in block form: sum over group pairs p != j of
    |A_pj| plus |B_pj|."""
    _check_dims(model, grouping)
    state_sets = [np.flatnonzero(grouping.alpha[p]) for p in range(grouping.n_groups)]
    input_sets = [np.flatnonzero(grouping.beta[p]) for p in range(grouping.n_groups)]
    total = 0.0
    for p in range(grouping.n_groups):
        for j in range(grouping.n_groups):
            if j == p:
                continue
            total += abs_sum(model.A[np.ix_(state_sets[p], state_sets[j])])
            total += abs_sum(model.B[np.ix_(state_sets[p], input_sets[j])])
    return total


def interaction_cost_elements(model: StateSpaceModel, grouping: GroupingPair) -> float:
    """Coupling metric in element form: sum_p sum_ij alpha_pi |a_ij|
    (1 - alpha_pj) plus the same with beta over the input matrix.

    Must equal :func:`interaction_cost_blocks` on every valid input.
    """
    _check_dims(model, grouping)
    alpha = grouping.alpha.astype(float)
    beta = grouping.beta.astype(float)
    state_part = np.einsum("pi,ij,pj->", alpha, np.abs(model.A), 1.0 - alpha)
    input_part = np.einsum("pi,ik,pk->", alpha, np.abs(model.B), 1.0 - beta)
    return float(state_part + input_part)


def controllability_matrix(subsystem: Subsystem) -> np.ndarray:
    """[B_pp | A_pp B_pp | ... | A_pp^(n-1) B_pp] for n subsystem states."""
    blocks = [subsystem.B_pp]
    current = subsystem.B_pp
    for _ in range(1, subsystem.n_states):
        current = mat_mul(subsystem.A_pp, current)
        blocks.append(current)
    return hconcat(blocks)


def is_controllable(subsystem: Subsystem, tol: float | None = None) -> bool:
    """Full-row-rank test on the subsystem controllability matrix."""
    return numerical_rank(controllability_matrix(subsystem), tol) == subsystem.n_states


def group_labels(grouping: GroupingPair) -> tuple[np.ndarray, np.ndarray]:
    """Per-state and per-input group labels (row index of the single 1)."""
    return (
        np.argmax(grouping.alpha, axis=0),
        np.argmax(grouping.beta, axis=0),
    )
