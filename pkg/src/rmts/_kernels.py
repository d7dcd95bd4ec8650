"""Numba-compiled inner loops shared by the SC engine and the tree decoders.

Everything here operates on plain float64/uint8 arrays and accumulates
metrics in ascending index order; the tree-search equality guarantees
(identical pm_best across traversals, prefix-bound monotonicity) rely on
that fixed accumulation order, so keep it.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def _boxplus_exact(a: float, b: float) -> float:
    # Numerically stable 2*atanh(tanh(a/2)*tanh(b/2)), via
    # ln((1+e^(a+b))/(e^a+e^b)) with max-log terms split off. The
    # corrections need |a+b| and |a-b| (not |a|+|b| / ||a|-|b||, which
    # differ when the signs differ).
    aa = abs(a)
    ab = abs(b)
    sign = 1.0
    if a < 0.0:
        sign = -sign
    if b < 0.0:
        sign = -sign
    small = aa if aa < ab else ab
    return sign * small + math.log1p(math.exp(-abs(a + b))) - math.log1p(math.exp(-abs(a - b)))


@njit(cache=True)
def _softplus(x: float) -> float:
    # log(1 + exp(x)) without overflow.
    if x > 0.0:
        return x + math.log1p(math.exp(-x))
    return math.log1p(math.exp(x))


@njit(cache=True)
def sc_pass(alpha_ch, frozen_mask, flip_mask, n_levels, exact_llr):
    """One full SC pass over the length-N butterfly.

    Frozen bits decide 0, information bits follow the sign of their decision
    LLR (alpha >= 0 -> 0), flip positions take the complement; decisions
    propagate into every later LLR. Returns (u_hat, alpha_u) where alpha_u
    holds the decision-time LLR of every bit.
    """
    n = alpha_ch.shape[0]
    llr = np.empty((n_levels + 1, n))
    ucap = np.zeros((n_levels + 1, n), dtype=np.uint8)
    state = np.zeros(2 * n - 1, dtype=np.uint8)
    u_hat = np.zeros(n, dtype=np.uint8)
    alpha_u = np.zeros(n)
    llr[0, :] = alpha_ch
    depth = 0
    node = 0
    while True:
        if depth == n_levels:
            i = node
            a = llr[n_levels, i]
            alpha_u[i] = a
            if frozen_mask[i]:
                u = 0
            else:
                u = 0 if a >= 0.0 else 1
                if flip_mask[i]:
                    u = 1 - u
            u_hat[i] = u
            ucap[n_levels, i] = u
            if i == n - 1:
                break
            node //= 2
            depth -= 1
        else:
            npos = (1 << depth) - 1 + node
            seg = n >> depth
            base = seg * node
            half = seg // 2
            st = state[npos]
            if st == 0:
                for j in range(half):
                    a = llr[depth, base + j]
                    b = llr[depth, base + half + j]
                    if exact_llr:
                        llr[depth + 1, base + j] = _boxplus_exact(a, b)
                    else:
                        s = 1.0
                        if a < 0.0:
                            s = -s
                        if b < 0.0:
                            s = -s
                        aa = abs(a)
                        ab = abs(b)
                        llr[depth + 1, base + j] = s * (aa if aa < ab else ab)
                node = 2 * node
                depth += 1
                state[npos] = 1
            elif st == 1:
                for j in range(half):
                    a = llr[depth, base + j]
                    b = llr[depth, base + half + j]
                    ul = ucap[depth + 1, base + j]
                    llr[depth + 1, base + half + j] = b + (1.0 - 2.0 * ul) * a
                node = 2 * node + 1
                depth += 1
                state[npos] = 2
            else:
                for j in range(half):
                    ucap[depth, base + j] = ucap[depth + 1, base + j] ^ ucap[depth + 1, base + half + j]
                    ucap[depth, base + half + j] = ucap[depth + 1, base + half + j]
                node //= 2
                depth -= 1
    return u_hat, alpha_u


@njit(cache=True)
def penalty_prefix_and_pm(alpha_u, frozen_mask, flip_mask, exact_pm):
    """Path metric of a decoded candidate plus its hard penalty prefix sums.

    prefix[i] is the ascending sum over j < i of the hard penalties
    (frozen sign mismatches plus forced-flip magnitudes); prefix[N] is the
    hard path metric. The returned pm is prefix[N] in hard mode, or the
    full log-domain metric sum(log(1 + exp(-(1-2u)alpha))) in exact mode.
    sgn(0) counts as +1 throughout, so an LLR of exactly 0 adds no hard
    penalty.
    """
    n = alpha_u.shape[0]
    prefix = np.empty(n + 1)
    prefix[0] = 0.0
    for j in range(n):
        a = alpha_u[j]
        pen = 0.0
        if frozen_mask[j]:
            if a < 0.0:
                pen = -a
        elif flip_mask[j]:
            pen = abs(a)
        prefix[j + 1] = prefix[j] + pen
    if not exact_pm:
        return prefix[n], prefix
    pm = 0.0
    for j in range(n):
        a = alpha_u[j]
        if frozen_mask[j]:
            z = a  # decided 0
        elif flip_mask[j]:
            z = -abs(a)  # decided against the sign
        else:
            z = abs(a)  # followed the sign
        pm += _softplus(-z)
    return pm, prefix
