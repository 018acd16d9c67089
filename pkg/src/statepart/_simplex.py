"""Bounded-variable two-phase primal simplex kernel.

This is the inner loop of the branch-and-bound solver: every node of the
search tree solves one LP relaxation here.  The implementation is a dense
full-tableau simplex with explicit lower/upper bounds on every variable,
a phase-1 artificial start, Dantzig pricing, and Bland's rule as the
anti-cycling fallback once the objective stalls.

The function is written in a numba-compatible subset of numpy; row-level
operations are vectorized so the plain-numpy fallback path stays usable.
See ``_accel`` for how the compiled/plain variant is selected.

Statuses returned: 0 optimal, 1 infeasible, 2 iteration limit,
3 unbounded (impossible for well-posed bounded problems; callers treat it
as an internal error).
"""

from __future__ import annotations

import numpy as np

from ._accel import NUMBA_AVAILABLE, jit_compile, select_kernel

LP_OPTIMAL = 0
LP_INFEASIBLE = 1
LP_ITERATION_LIMIT = 2
LP_UNBOUNDED = 3

# Reduced-cost / pivot magnitude thresholds.  Constraint matrices in this
# package have entries of order one (the objective is rescaled internally),
# so absolute thresholds are safe.
_EPS_RC = 1e-9
_EPS_PIV = 1e-9


def _lp_core(A, b, senses, c, lower, upper, max_iter, hint):
    """Solve min c@x s.t. A x (<=,=,>=) b, lower <= x <= upper.

    senses holds one int8 per row: -1 for <=, 0 for =, +1 for >=.
    lower/upper must be finite for the structural variables.  ``hint``
    (length n) seeds the starting point: variables with hint >= 0.5 start
    at their upper bound, the rest at their lower bound.  The hint affects
    only the pivot path, never the result.
    Returns (status, objective, x).
    """
    m, n = A.shape

    # Rescale the objective so pricing tolerances are magnitude independent.
    cmax = 0.0
    for j in range(n):
        aj = abs(c[j])
        if aj > cmax:
            cmax = aj
    if cmax == 0.0:
        cmax = 1.0

    # Normalize >= rows to <= so every slack has coefficient +1.
    W = np.empty((m, n))
    bw = np.empty(m)
    is_eq = np.empty(m, np.bool_)
    for i in range(m):
        if senses[i] > 0:
            W[i] = -A[i]
            bw[i] = -b[i]
            is_eq[i] = False
        else:
            W[i] = A[i]
            bw[i] = b[i]
            is_eq[i] = senses[i] == 0

    # Starting point: each variable at one of its bounds, guided by the
    # hint.  Residuals there decide which rows can start with their slack
    # basic and which need an artificial.
    x0 = np.empty(n)
    start_upper = np.zeros(n, np.bool_)
    for j in range(n):
        if hint[j] >= 0.5 and upper[j] > lower[j] and np.isfinite(upper[j]):
            start_upper[j] = True
            x0[j] = upper[j]
        else:
            x0[j] = lower[j]
    r = bw - W @ x0

    slack_sign = np.zeros(m)
    need_art = np.empty(m, np.bool_)
    for i in range(m):
        if is_eq[i]:
            need_art[i] = True
            if r[i] < 0.0:
                W[i] = -W[i]
                bw[i] = -bw[i]
                r[i] = -r[i]
        else:
            slack_sign[i] = 1.0
            if r[i] < 0.0:
                W[i] = -W[i]
                bw[i] = -bw[i]
                r[i] = -r[i]
                slack_sign[i] = -1.0
                need_art[i] = True
            else:
                need_art[i] = False

    n_slack = 0
    for i in range(m):
        if not is_eq[i]:
            n_slack += 1
    n_art = 0
    for i in range(m):
        if need_art[i]:
            n_art += 1
    art0 = n + n_slack
    n_tot = art0 + n_art

    T = np.zeros((m, n_tot))
    for i in range(m):
        T[i, :n] = W[i]
    lo = np.zeros(n_tot)
    up = np.empty(n_tot)
    lo[:n] = lower
    up[:n] = upper
    up[n:] = np.inf

    basis = np.empty(m, np.int64)
    xB = r.copy()
    si = n
    ai = art0
    for i in range(m):
        if not is_eq[i]:
            T[i, si] = slack_sign[i]
            if not need_art[i]:
                basis[i] = si
            si += 1
        if need_art[i]:
            T[i, ai] = 1.0
            basis[i] = ai
            ai += 1

    is_basic = np.zeros(n_tot, np.bool_)
    for i in range(m):
        is_basic[basis[i]] = True
    at_upper = np.zeros(n_tot, np.bool_)
    at_upper[:n] = start_upper

    cost1 = np.zeros(n_tot)
    cost1[art0:] = 1.0
    cost2 = np.zeros(n_tot)
    for j in range(n):
        cost2[j] = c[j] / cmax

    d = np.empty(n_tot)
    max_feas = 1.0
    for i in range(m):
        ab = abs(bw[i])
        if ab > max_feas:
            max_feas = ab
    eps_feas = 1e-7 * max_feas
    stall_limit = m + n_tot + 50

    def run_phase(cost, iter_budget):
        # Fresh reduced costs for the current basis.
        for j in range(n_tot):
            d[j] = cost[j]
        for i in range(m):
            cb = cost[basis[i]]
            if cb != 0.0:
                d[:] = d - cb * T[i]
        for i in range(m):
            d[basis[i]] = 0.0

        z = 0.0
        for i in range(m):
            z += cost[basis[i]] * xB[i]

        # Pricing state maintained incrementally: nonbasic unfixed variables
        # are eligible; the sign turns reduced costs into violations.
        eligible = np.empty(n_tot, np.bool_)
        price_sign = np.empty(n_tot)
        for jj in range(n_tot):
            eligible[jj] = (not is_basic[jj]) and lo[jj] < up[jj]
            price_sign[jj] = 1.0 if at_upper[jj] else -1.0

        bland = False
        stall = 0
        refreshed = False
        it = 0
        while it < iter_budget:
            it += 1

            viol = np.where(eligible, d * price_sign, -1.0)
            if bland:
                j = -1
                for jj in range(n_tot):
                    if viol[jj] > _EPS_RC:
                        j = jj
                        break
            else:
                j = int(np.argmax(viol))
                if viol[j] <= _EPS_RC:
                    j = -1
            if j < 0:
                if refreshed:
                    return 0, it
                # Maintained reduced costs drift; confirm optimality on
                # freshly recomputed ones before declaring victory.
                for jj in range(n_tot):
                    d[jj] = cost[jj]
                for i in range(m):
                    cb = cost[basis[i]]
                    if cb != 0.0:
                        d[:] = d - cb * T[i]
                for i in range(m):
                    d[basis[i]] = 0.0
                refreshed = True
                continue
            refreshed = False

            s = -1.0 if at_upper[j] else 1.0
            y = T[:, j].copy()
            delta = -s * y

            lo_b = lo[basis]
            up_b = up[basis]

            dec = delta < -_EPS_PIV
            inc = delta > _EPS_PIV
            t_dec = np.where(
                dec,
                np.maximum(xB - lo_b, 0.0) / np.where(dec, -delta, 1.0),
                np.inf,
            )
            t_inc = np.where(
                inc,
                np.maximum(up_b - xB, 0.0) / np.where(inc, delta, 1.0),
                np.inf,
            )
            t_rows = np.minimum(t_dec, t_inc)
            t_min = np.inf
            for i in range(m):
                if t_rows[i] < t_min:
                    t_min = t_rows[i]

            t_flip = up[j] - lo[j]
            if t_flip <= t_min:
                # Entering variable hits its opposite bound first.
                if not np.isfinite(t_flip):
                    return 3, it
                dz = d[j] * s * t_flip
                xB[:] = xB - (s * t_flip) * y
                at_upper[j] = not at_upper[j]
                price_sign[j] = -price_sign[j]
                z += dz
            else:
                if not np.isfinite(t_min):
                    return 3, it
                cut = t_min * (1.0 + 1e-12) + 1e-15
                rpick = -1
                if bland:
                    best_idx = n_tot + 1
                    for i in range(m):
                        if t_rows[i] <= cut and basis[i] < best_idx:
                            best_idx = basis[i]
                            rpick = i
                else:
                    best_mag = -1.0
                    best_idx = n_tot + 1
                    for i in range(m):
                        if t_rows[i] <= cut:
                            mag = abs(delta[i])
                            if mag > best_mag or (
                                mag == best_mag and basis[i] < best_idx
                            ):
                                best_mag = mag
                                best_idx = basis[i]
                                rpick = i
                rr = rpick
                t = t_rows[rr]
                v_enter = up[j] if at_upper[j] else lo[j]
                dz = d[j] * s * t
                xB[:] = xB - (s * t) * y
                xB[rr] = v_enter + s * t
                leaving = basis[rr]
                at_upper[leaving] = delta[rr] > 0.0
                is_basic[leaving] = False
                is_basic[j] = True
                eligible[leaving] = lo[leaving] < up[leaving]
                price_sign[leaving] = 1.0 if at_upper[leaving] else -1.0
                eligible[j] = False

                piv = T[rr, j]
                T[rr] = T[rr] / piv
                Tr = T[rr]
                for i in range(m):
                    if i != rr:
                        f = T[i, j]
                        if f != 0.0:
                            T[i] = T[i] - f * Tr
                            T[i, j] = 0.0
                f = d[j]
                d[:] = d - f * Tr
                d[j] = 0.0
                basis[rr] = j
                z += dz

            if dz < -1e-12 * (1.0 + abs(z)):
                stall = 0
                bland = False
            else:
                stall += 1
                if stall > stall_limit:
                    bland = True
        return 2, it

    status1, _ = run_phase(cost1, max_iter)
    if status1 == 2:
        return LP_ITERATION_LIMIT, 0.0, np.zeros(n)
    if status1 == 3:
        return LP_UNBOUNDED, 0.0, np.zeros(n)

    z1 = 0.0
    for i in range(m):
        if basis[i] >= art0:
            z1 += xB[i]
    if z1 > eps_feas:
        return LP_INFEASIBLE, 0.0, np.zeros(n)

    # Pivot residual artificials out of the basis where possible; rows whose
    # free columns are all zero are redundant and keep a zero artificial.
    for i in range(m):
        if basis[i] >= art0:
            jpick = -1
            best = 1e-7
            for jj in range(art0):
                if not is_basic[jj] and lo[jj] < up[jj]:
                    mag = abs(T[i, jj])
                    if mag > best:
                        best = mag
                        jpick = jj
            if jpick >= 0:
                piv = T[i, jpick]
                T[i] = T[i] / piv
                Tr = T[i]
                for k in range(m):
                    if k != i:
                        f = T[k, jpick]
                        if f != 0.0:
                            T[k] = T[k] - f * Tr
                            T[k, jpick] = 0.0
                is_basic[basis[i]] = False
                is_basic[jpick] = True
                basis[i] = jpick
                xB[i] = up[jpick] if at_upper[jpick] else lo[jpick]

    # Artificials may never move again.
    for j in range(art0, n_tot):
        up[j] = 0.0

    status2, _ = run_phase(cost2, max_iter)
    if status2 == 2:
        return LP_ITERATION_LIMIT, 0.0, np.zeros(n)
    if status2 == 3:
        return LP_UNBOUNDED, 0.0, np.zeros(n)

    x = np.empty(n_tot)
    for j in range(n_tot):
        x[j] = up[j] if at_upper[j] else lo[j]
    for i in range(m):
        x[basis[i]] = xB[i]
    xs = x[:n].copy()
    obj = 0.0
    for j in range(n):
        obj += c[j] * xs[j]
    return LP_OPTIMAL, obj, xs


_lp_core_py = _lp_core
_lp_core_jit = jit_compile(_lp_core) if NUMBA_AVAILABLE else None
lp_core = select_kernel(_lp_core_py, _lp_core_jit)


def warm_up() -> None:
    """Trigger JIT compilation on a trivial instance (no-op without numba)."""
    A = np.array([[1.0, 1.0]])
    b = np.array([1.0])
    senses = np.array([-1], np.int8)
    c = np.array([-1.0, -1.0])
    lower = np.zeros(2)
    upper = np.ones(2)
    lp_core(A, b, senses, c, lower, upper, 100, np.zeros(2))
