"""Reference implementations and statistics helpers shared by the tests.

The decoders here are deliberately independent of the production engine:
the straight-line SC computes every decision LLR from scratch by halving
the channel vector level by level (no shared state machine, no recursion),
and the posterior utilities enumerate sequences outright. They exist to be
slow and obviously correct.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

import rmts
from rmts import sc_core


def channel_weight(alpha_ch: np.ndarray, x: np.ndarray) -> float:
    """Unnormalized likelihood exp(sum alpha_j (1 - 2 x_j) / 2)."""
    return math.exp(0.5 * float(np.sum(alpha_ch * (1.0 - 2.0 * x.astype(np.float64)))))


def correlation(y: np.ndarray, x: np.ndarray) -> float:
    """BPSK correlation between a received vector and a codeword."""
    return float(np.dot(1.0 - 2.0 * x.astype(np.float64), y))


def decision_llr_straightline(alpha_ch, u_prev, i: int, m: int, llr_mode: str) -> float:
    """Decision LLR of bit i, computed from scratch by successive halving.

    Walks the m levels once: the half containing bit i is kept, combining
    with f when i sits in the upper half and with g (using the butterfly
    re-encoding of the already-decided lower half) otherwise.
    """
    fop = sc_core.f_exact if llr_mode == "exact" else sc_core.f_minsum
    a = np.asarray(alpha_ch, dtype=np.float64).copy()
    lo = 0
    size = 1 << m
    while size > 1:
        half = size // 2
        if i < lo + half:
            a = np.array([fop(a[j], a[j + half]) for j in range(half)])
        else:
            beta = rmts.butterfly_transform(np.asarray(u_prev[lo : lo + half], dtype=np.uint8))
            a = np.array([a[j + half] + (1.0 - 2.0 * float(beta[j])) * a[j] for j in range(half)])
            lo += half
        size = half
    return float(a[0])


def straightline_sc(alpha_ch, spec, flips=(), llr_mode: str = "minsum"):
    """Non-recursive reference SC pass; returns (u_hat, alpha_u)."""
    flips = set(int(i) for i in flips)
    u_hat = np.zeros(spec.N, dtype=np.uint8)
    alpha_u = np.zeros(spec.N)
    for i in range(spec.N):
        a = decision_llr_straightline(alpha_ch, u_hat, i, spec.m, llr_mode)
        alpha_u[i] = a
        if spec.frozen_mask[i]:
            u = 0
        else:
            u = 0 if a >= 0.0 else 1
            if i in flips:
                u = 1 - u
        u_hat[i] = u
    return u_hat, alpha_u


def posterior_llr_enum(alpha_ch, prefix_bits, i: int) -> float:
    """Exact ln P(u_i=0 | y, prefix) / P(u_i=1 | y, prefix) by enumeration.

    All future bits (frozen ones included) are marginalized uniformly,
    matching the SC conditioning.
    """
    n = len(alpha_ch)
    n_future = n - i - 1
    tot = [0.0, 0.0]
    for b in (0, 1):
        for future in range(1 << n_future):
            u = np.zeros(n, dtype=np.uint8)
            u[:i] = prefix_bits[:i]
            u[i] = b
            for t in range(n_future):
                u[i + 1 + t] = (future >> t) & 1
            tot[b] += channel_weight(alpha_ch, rmts.butterfly_transform(u))
    return math.log(tot[0] / tot[1])


def sequence_neg_log_posterior(alpha_ch, u_hat) -> float:
    """-ln P(u_hat | y) under a uniform prior over all 2^N sequences."""
    n = len(alpha_ch)
    x = rmts.butterfly_transform(np.asarray(u_hat, dtype=np.uint8))
    z = 0.0
    for bits in range(1 << n):
        v = np.array([(bits >> t) & 1 for t in range(n)], dtype=np.uint8)
        z += channel_weight(alpha_ch, rmts.butterfly_transform(v))
    return -math.log(channel_weight(alpha_ch, x) / z)


def exhaustive_tree_min(alpha_ch, spec, omega, llr_mode="minsum", pm_mode="hard"):
    """Minimum full path metric over every node of the depth-limited tree.

    Enumerates flip sets directly (no traversal code shared with the
    decoders) over the effective indices, up to omega flips.
    """
    eff = [int(i) for i in rmts.effective_flip_indices(spec)]
    cap = len(eff) if omega is None else min(omega, len(eff))
    best = math.inf
    count = 0
    for depth in range(cap + 1):
        for combo in itertools.combinations(eff, depth):
            out = rmts.sc_decode(alpha_ch, spec, combo, llr_mode=llr_mode, pm_mode=pm_mode)
            best = min(best, out.pm)
            count += 1
    return best, count


def random_frame(spec, sigma2: float, seed: int, frame: int):
    """Draw one (msg, x, y, alpha) tuple the same way the harness does."""
    rng = rmts.frame_rng(seed, frame)
    msg = rng.integers(0, 2, size=spec.K, dtype=np.uint8)
    x = rmts.encode(spec, msg)
    y = rmts.add_noise(rmts.modulate(x), sigma2, rng)
    return msg, x, y, rmts.llr_init(y, sigma2)


def paired_fer_leq(err_a: np.ndarray, err_b: np.ndarray, z_crit: float = 1.645) -> bool:
    """One-sided paired test that FER(a) <= FER(b) at ~95% confidence.

    Uses the discordant frame counts: fails only when a errs on
    significantly more frames than b among the disagreements.
    """
    a = np.asarray(err_a, dtype=bool)
    b = np.asarray(err_b, dtype=bool)
    n01 = int(np.count_nonzero(a & ~b))  # a errs, b fine
    n10 = int(np.count_nonzero(~a & b))  # b errs, a fine
    if n01 + n10 == 0:
        return True
    z = (n01 - n10) / math.sqrt(n01 + n10)
    return z <= z_crit


def paired_mean_leq(values_a: np.ndarray, values_b: np.ndarray, z_crit: float = 1.645) -> bool:
    """One-sided paired test that mean(a) <= mean(b) at ~95% confidence."""
    diff = np.asarray(values_a, dtype=np.float64) - np.asarray(values_b, dtype=np.float64)
    sd = float(diff.std(ddof=1))
    if sd == 0.0:
        return float(diff.mean()) <= 0.0
    z = float(diff.mean()) / (sd / math.sqrt(len(diff)))
    return z <= z_crit


def fer_leq_unpaired(err_hi: np.ndarray, err_lo: np.ndarray, z_crit: float = 1.645) -> bool:
    """One-sided unpaired check that FER(hi-SNR run) <= FER(lo-SNR run)."""
    a = np.asarray(err_hi, dtype=np.float64)
    b = np.asarray(err_lo, dtype=np.float64)
    pa, pb = a.mean(), b.mean()
    se = math.sqrt(pa * (1 - pa) / len(a) + pb * (1 - pb) / len(b))
    if se == 0.0:
        return pa <= pb
    return (pa - pb) / se <= z_crit
