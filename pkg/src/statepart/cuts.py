"""Cut family that excludes one known-bad partitioning from the search.

For a grouping (alpha*, beta*), the inequality

    sum_pi alpha*_pi alpha_pi + sum_pk beta*_pk beta_pk <= N + M - 1

holds for every valid grouping except (alpha*, beta*) itself, where the
left side reaches N + M.  Because group labels are arbitrary, the same
partition reappears under any simultaneous row permutation of alpha and
beta, so the full family has one cut per permutation: P! cuts that remove
every labeling of the partition at once, never deduplicated.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .bilp import LinearConstraint
from .formulation import VariableIndex
from .model import GroupingPair

__all__ = ["controllability_cuts"]


def controllability_cuts(
    grouping: GroupingPair, index: VariableIndex
) -> list[LinearConstraint]:
    """All P! exclusion cuts for one non-controllable grouping.

    Each permutation pi is applied jointly to the alpha and beta rows (a
    group is a states+inputs pair), and the cut puts coefficient 1 on the
    variables where the permuted grouping has a 1.
    """
    P, N, M = grouping.n_groups, grouping.n_states, grouping.n_inputs
    if (index.n_groups, index.n_states, index.n_inputs) != (P, N, M):
        raise ValueError(
            f"grouping shape ({P},{N},{M}) does not match index "
            f"({index.n_groups},{index.n_states},{index.n_inputs})"
        )
    rhs = float(N + M - 1)
    cuts = []
    for perm in permutations(range(P)):
        terms = []
        for p in range(P):
            target = perm[p]
            for i in np.flatnonzero(grouping.alpha[p]):
                terms.append((int(index.alpha[target, i]), 1.0))
            for k in np.flatnonzero(grouping.beta[p]):
                terms.append((int(index.beta[target, k]), 1.0))
        cuts.append(LinearConstraint(tuple(terms), "<=", rhs))
    return cuts
