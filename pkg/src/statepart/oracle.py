"""Brute-force ground truth for small problems.

Enumerates every distinct partitioning exactly once (canonical labeling),
scores it with a direct label-vector cost computation, and tests each
subsystem's controllability, using exact fraction arithmetic whenever the
model entries are integers.  The optimized path is validated against this
module; nothing here is used by the solver itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb, factorial

import numpy as np

from .linalg import exact_rank, numerical_rank
from .model import (
    GroupingPair,
    StateSpaceModel,
    controllability_matrix,
    extract_partition,
    validate_problem,
)

__all__ = [
    "enumerate_groupings",
    "brute_force_optimum",
    "BruteForceResult",
    "count_partitionings",
    "surjection_count",
]

MAX_ORACLE_SIZE = 7


def surjection_count(n: int, k: int) -> int:
    """Number of onto maps from an n-set to a k-set (inclusion-exclusion)."""
    return sum((-1) ** i * comb(k, i) * (k - i) ** n for i in range(k + 1))


def count_partitionings(n_states: int, n_inputs: int, n_groups: int) -> int:
    """Distinct partitionings: surjections of states and inputs onto the
    groups, divided by the P! relabelings."""
    return (
        surjection_count(n_states, n_groups)
        * surjection_count(n_inputs, n_groups)
        // factorial(n_groups)
    )


def _state_label_vectors(n: int, p: int):
    """Restricted-growth label sequences over n states using exactly p
    labels: labels appear in first-appearance order, which makes the
    combined state-then-input labeling canonical by construction."""
    labels = [0] * n

    def rec(pos: int, used: int):
        if pos == n:
            if used == p:
                yield tuple(labels)
            return
        if used + (n - pos) < p:
            return
        for lab in range(used):
            labels[pos] = lab
            yield from rec(pos + 1, used)
        if used < p:
            labels[pos] = used
            yield from rec(pos + 1, used + 1)

    yield from rec(0, 0)


def _grouping_from_labels(state_labels, input_labels, n_groups: int) -> GroupingPair:
    alpha = np.zeros((n_groups, len(state_labels)), dtype=np.int64)
    beta = np.zeros((n_groups, len(input_labels)), dtype=np.int64)
    for i, lab in enumerate(state_labels):
        alpha[lab, i] = 1
    for k, lab in enumerate(input_labels):
        beta[lab, k] = 1
    return GroupingPair(alpha=alpha, beta=beta)


def enumerate_groupings(n_states: int, n_inputs: int, n_groups: int):
    """Yield every distinct partitioning exactly once, in canonical form.

    States are labeled by restricted-growth sequences (labels in
    first-appearance order); inputs then range over all onto labelings.
    The total count is surj(N,P) * surj(M,P) / P!.
    """
    if not 1 < n_groups <= min(n_states, n_inputs):
        raise ValueError(
            f"group count must satisfy 1 < P <= min(N, M) = "
            f"{min(n_states, n_inputs)}; got P={n_groups}"
        )
    for state_labels in _state_label_vectors(n_states, n_groups):
        for input_labels in product(range(n_groups), repeat=n_inputs):
            if len(set(input_labels)) != n_groups:
                continue
            yield _grouping_from_labels(state_labels, input_labels, n_groups)


@dataclass(frozen=True)
class BruteForceResult:
    best_controllable: tuple[GroupingPair, float] | None
    ranking: list  # (cost, controllable, GroupingPair) ascending by cost


def _is_integral_model(model: StateSpaceModel) -> bool:
    return bool(
        np.all(model.A == np.rint(model.A)) and np.all(model.B == np.rint(model.B))
    )


def _exact_controllability_rank(A_pp: np.ndarray, B_pp: np.ndarray) -> int:
    """Rank of [B | AB | ... | A^(n-1)B] built with exact integer arithmetic."""
    a = [[int(round(v)) for v in row] for row in A_pp.tolist()]
    cur = [[int(round(v)) for v in row] for row in B_pp.tolist()]
    n = len(a)
    cols = [list(row) for row in cur]
    for _ in range(1, n):
        cur = [
            [sum(a[i][t] * cur[t][j] for t in range(n)) for j in range(len(cur[0]))]
            for i in range(n)
        ]
        for i in range(n):
            cols[i].extend(cur[i])
    return exact_rank(cols)


def brute_force_optimum(
    model: StateSpaceModel,
    n_groups: int,
    tol: float | None = None,
    max_size: int = MAX_ORACLE_SIZE,
) -> BruteForceResult:
    """Enumerate, score, and rank every partitioning of a small model.

    Ranking is ascending by cost with canonical label vectors breaking
    ties; ``best_controllable`` is the first controllable entry, or None
    when no partitioning is controllable.  Integer models use exact
    fraction-arithmetic rank so disagreements with the main path on such
    models are always real bugs.
    """
    validate_problem(model, n_groups)
    if model.n_states > max_size or model.n_inputs > max_size:
        raise ValueError(
            f"brute force is desk-scale only (N, M <= {max_size}); "
            f"got N={model.n_states}, M={model.n_inputs}"
        )
    absA = np.abs(model.A)
    absB = np.abs(model.B)
    integral = _is_integral_model(model)
    ctrl_cache: dict = {}

    entries = []
    for grouping in enumerate_groupings(model.n_states, model.n_inputs, n_groups):
        state_labels = np.argmax(grouping.alpha, axis=0)
        input_labels = np.argmax(grouping.beta, axis=0)
        cross_states = state_labels[:, None] != state_labels[None, :]
        cross_inputs = state_labels[:, None] != input_labels[None, :]
        cost = float(absA[cross_states].sum() + absB[cross_inputs].sum())

        controllable = True
        for sub in extract_partition(model, grouping):
            key = (tuple(sub.state_indices), tuple(sub.input_indices))
            verdict = ctrl_cache.get(key)
            if verdict is None:
                if integral:
                    rank = _exact_controllability_rank(sub.A_pp, sub.B_pp)
                else:
                    rank = numerical_rank(controllability_matrix(sub), tol)
                verdict = rank == sub.n_states
                ctrl_cache[key] = verdict
            if not verdict:
                controllable = False
        entries.append(
            (cost, tuple(state_labels), tuple(input_labels), controllable, grouping)
        )

    entries.sort(key=lambda e: (e[0], e[1], e[2]))
    ranking = [(cost, ok, grouping) for cost, _, _, ok, grouping in entries]
    best = None
    for cost, ok, grouping in ranking:
        if ok:
            best = (grouping, cost)
            break
    return BruteForceResult(best_controllable=best, ranking=ranking)
