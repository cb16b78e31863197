"""Numba inner loops for million-step protocol runs.

Each kernel advances one chunk of steps in place and fills snapshot
rows whenever the step count crosses the sorted sample schedule.  The
arithmetic mirrors the pure-numpy step functions exactly (same order
of elementwise operations) so the two paths agree to rounding noise;
the tests enforce that agreement.

A Kahan-compensated sum of the iterates runs alongside the recursive
average as a drift audit; kernels report the worst L1 gap seen at the
sampled steps.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def single_chunk(
    a_indptr_c,
    a_rows,
    a_vals_c,
    a_indptr_r,
    a_cols,
    a_vals_r,
    theta,
    one_minus_a1,
    a1_over_n,
    t0,
    x,
    xbar,
    y,
    ksum,
    kcomp,
    sched,
    sptr,
    out_x,
    out_xbar,
    drift,
):
    """Advance the one-page-at-a-time recursion over a chunk of draws.

    The selected page i contributes its row and column of the link
    matrix; every other page j keeps weight 1 - a[i, j] on itself.
    """
    n = x.shape[0]
    for tt in range(theta.shape[0]):
        t = t0 + tt
        i = theta[tt]
        for j in range(n):
            y[j] = x[j]
        for idx in range(a_indptr_r[i], a_indptr_r[i + 1]):
            j = a_cols[idx]
            y[j] -= a_vals_r[idx] * x[j]
        xi = x[i]
        for idx in range(a_indptr_c[i], a_indptr_c[i + 1]):
            y[a_rows[idx]] += a_vals_c[idx] * xi
        acc = 0.0
        for idx in range(a_indptr_r[i], a_indptr_r[i + 1]):
            acc += a_vals_r[idx] * x[a_cols[idx]]
        y[i] = acc
        # audit sum of the pre-step iterates x_0 .. x_t
        for j in range(n):
            v = x[j] - kcomp[j]
            s = ksum[j] + v
            kcomp[j] = (s - ksum[j]) - v
            ksum[j] = s
        g = 1.0 / (t + 1)
        for j in range(n):
            xbar[j] -= (xbar[j] - x[j]) * g
        for j in range(n):
            x[j] = one_minus_a1 * y[j] + a1_over_n
        k = t + 1
        if sptr < sched.shape[0] and sched[sptr] == k:
            for j in range(n):
                out_x[sptr, j] = x[j]
                out_xbar[sptr, j] = xbar[j]
            d = 0.0
            for j in range(n):
                d += abs(xbar[j] - ksum[j] / k)
            if d > drift[0]:
                drift[0] = d
            sptr += 1
    return sptr


@njit(cache=True)
def multi_chunk(
    a_indptr_c,
    a_rows,
    a_vals_c,
    a_indptr_r,
    a_cols,
    a_vals_r,
    bits,
    one_minus_a2,
    a2_over_n,
    t0,
    x,
    xbar,
    y,
    v_sel,
    v_unsel,
    s,
    ksum,
    kcomp,
    sched,
    sptr,
    out_x,
    out_xbar,
    drift,
):
    """Advance the simultaneous-update recursion over a chunk of patterns.

    For pattern row b: updating rows take a full link-matrix row, idle
    rows keep 1 - (selected-row column sum) of their own mass plus the
    inflow from updating columns.
    """
    n = x.shape[0]
    for tt in range(bits.shape[0]):
        t = t0 + tt
        for j in range(n):
            v_sel[j] = 0.0
            v_unsel[j] = 0.0
            s[j] = 0.0
        for h in range(n):
            if bits[tt, h]:
                for idx in range(a_indptr_r[h], a_indptr_r[h + 1]):
                    s[a_cols[idx]] += a_vals_r[idx]
        for j in range(n):
            xj = x[j]
            if bits[tt, j]:
                for idx in range(a_indptr_c[j], a_indptr_c[j + 1]):
                    v_sel[a_rows[idx]] += a_vals_c[idx] * xj
            else:
                for idx in range(a_indptr_c[j], a_indptr_c[j + 1]):
                    v_unsel[a_rows[idx]] += a_vals_c[idx] * xj
        for i in range(n):
            if bits[tt, i]:
                y[i] = v_sel[i] + v_unsel[i]
            else:
                y[i] = v_sel[i] + (1.0 - s[i]) * x[i]
        for j in range(n):
            v = x[j] - kcomp[j]
            ss = ksum[j] + v
            kcomp[j] = (ss - ksum[j]) - v
            ksum[j] = ss
        g = 1.0 / (t + 1)
        for j in range(n):
            xbar[j] -= (xbar[j] - x[j]) * g
        for j in range(n):
            x[j] = one_minus_a2 * y[j] + a2_over_n
        k = t + 1
        if sptr < sched.shape[0] and sched[sptr] == k:
            for j in range(n):
                out_x[sptr, j] = x[j]
                out_xbar[sptr, j] = xbar[j]
            d = 0.0
            for j in range(n):
                d += abs(xbar[j] - ksum[j] / k)
            if d > drift[0]:
                drift[0] = d
            sptr += 1
    return sptr


def empty_i64() -> np.ndarray:
    return np.empty(0, dtype=np.int64)
