"""Shared test utilities: published groupings, labeled-grouping enumeration,
and an exhaustive 0-1 program oracle."""

from itertools import product

import numpy as np

from statepart import BilpModel, GroupingPair, StateSpaceModel

# Published groupings for the two bundled examples, in canonical form
# (group labels in first-appearance order over states then inputs).
F100_ALPHA = np.array([[1, 1, 1, 0, 1], [0, 0, 0, 1, 0]])
F100_BETA = np.array([[0, 1, 1, 1, 1], [1, 0, 0, 0, 0]])
EX2_ALPHA = np.array([[1, 1, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
EX2_BETA = np.array([[1, 1, 0, 1, 0], [0, 0, 0, 0, 1], [0, 0, 1, 0, 0]])


def grouping_from_labels(state_labels, input_labels, n_groups):
    alpha = np.zeros((n_groups, len(state_labels)), dtype=np.int64)
    beta = np.zeros((n_groups, len(input_labels)), dtype=np.int64)
    for i, lab in enumerate(state_labels):
        alpha[lab, i] = 1
    for k, lab in enumerate(input_labels):
        beta[lab, k] = 1
    return GroupingPair(alpha=alpha, beta=beta)


def labeled_groupings(n_states, n_inputs, n_groups):
    """Every labeled grouping pair (both label vectors surjective)."""
    for sl in product(range(n_groups), repeat=n_states):
        if len(set(sl)) != n_groups:
            continue
        for il in product(range(n_groups), repeat=n_inputs):
            if len(set(il)) != n_groups:
                continue
            yield grouping_from_labels(sl, il, n_groups)


def same_grouping(a: GroupingPair, b: GroupingPair) -> bool:
    return np.array_equal(a.alpha, b.alpha) and np.array_equal(a.beta, b.beta)


def random_model(rng, n_states, n_inputs, low=-2, high=2) -> StateSpaceModel:
    A = rng.integers(low, high + 1, (n_states, n_states)).astype(float)
    B = rng.integers(low, high + 1, (n_states, n_inputs)).astype(float)
    return StateSpaceModel(A=A, B=B)


def random_grouping(rng, n_states, n_inputs, n_groups) -> GroupingPair:
    """Uniformly random labeled grouping with no empty group on either side."""
    while True:
        sl = rng.integers(0, n_groups, n_states)
        il = rng.integers(0, n_groups, n_inputs)
        if len(set(sl.tolist())) == n_groups and len(set(il.tolist())) == n_groups:
            return grouping_from_labels(sl, il, n_groups)


def all_assignments(n):
    """All 0-1 vectors of length n as an (2**n, n) int array (n <= ~20)."""
    codes = np.arange(2**n, dtype=np.int64)
    return (codes[:, None] >> np.arange(n)[None, :]) & 1


def enumerate_bilp(model: BilpModel):
    """Exhaustive ground truth: (status, optimal value, feasible assignments
    achieving the optimum); status is 'infeasible' when nothing is feasible."""
    A, b, senses, c = model.compile_arrays()
    pts = all_assignments(model.num_vars).astype(float)
    lhs = pts @ A.T
    ok = np.ones(len(pts), dtype=bool)
    for i in range(A.shape[0]):
        if senses[i] < 0:
            ok &= lhs[:, i] <= b[i] + 1e-9
        elif senses[i] > 0:
            ok &= lhs[:, i] >= b[i] - 1e-9
        else:
            ok &= np.abs(lhs[:, i] - b[i]) <= 1e-9
    if not np.any(ok):
        return "infeasible", None, None
    values = pts[ok] @ c
    best = values.min()
    winners = pts[ok][values <= best + 1e-9].astype(np.int64)
    return "optimal", float(best), winners


def lex_max_rows(rows: np.ndarray) -> np.ndarray:
    """Lexicographically largest row of a 2-D integer array."""
    best = rows[0]
    for row in rows[1:]:
        diff = np.flatnonzero(row != best)
        if len(diff) and row[diff[0]] > best[diff[0]]:
            best = row
    return best
