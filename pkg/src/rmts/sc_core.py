"""Successive-cancellation decoding with forced bit-flips and path metrics.

An SC pass decides bits one at a time over the butterfly: frozen bits are 0,
information bits follow the sign of their decision LLR, and the indices in a
flip set take the complement decision instead (the flip propagates into all
later LLRs). The path metric accumulates |alpha| for every decision that
contradicts its LLR sign; the exact mode keeps the full log-domain terms for
matching decisions too.

LLR vectors are plain float64 arrays; "channel domain" means the N values
entering the decoder, "decision domain" means the per-bit LLR seen when each
bit was decided (``alpha_u``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .rm_code import CodeSpec

LLR_MODES = ("minsum", "exact")
PM_MODES = ("hard", "exact")


@dataclass(frozen=True)
class ScOutput:
    """Result of one SC pass: decisions, decision-time LLRs, path metric."""

    u_hat: np.ndarray
    alpha_u: np.ndarray
    pm: float


def hard_decision(alpha: float) -> int:
    """0 iff alpha >= 0 (sgn(0) counts as +1), else 1."""
    return 0 if alpha >= 0.0 else 1


def f_minsum(a: float, b: float) -> float:
    """Min-sum LLR combine: sgn(a) sgn(b) min(|a|, |b|)."""
    sign = 1.0
    if a < 0.0:
        sign = -sign
    if b < 0.0:
        sign = -sign
    return sign * min(abs(a), abs(b))


def f_exact(a: float, b: float) -> float:
    """Exact LLR combine 2 atanh(tanh(a/2) tanh(b/2)), overflow-safe."""
    return float(_kernels._boxplus_exact(a, b))


def g_combine(a: float, b: float, u_hat: int) -> float:
    """LLR update once the upper branch bit is known: b + (1 - 2 u) a."""
    return b + (1.0 - 2.0 * u_hat) * a


def _as_flips(spec: CodeSpec, flips) -> tuple[int, ...]:
    """Validate a flip set: strictly increasing information indices."""
    flips = tuple(int(i) for i in flips)
    prev = -1
    for i in flips:
        if i <= prev:
            raise ValueError(f"flip indices must be strictly increasing, got {flips}")
        if not 0 <= i < spec.N or spec.frozen_mask[i]:
            raise ValueError(f"flip index {i} is not an information position")
        prev = i
    return flips


def _flip_mask(spec: CodeSpec, flips: tuple[int, ...]) -> np.ndarray:
    mask = np.zeros(spec.N, dtype=np.bool_)
    for i in flips:
        mask[i] = True
    return mask


def sc_decode(
    alpha_ch,
    spec: CodeSpec,
    flips=(),
    llr_mode: str = "minsum",
    pm_mode: str = "hard",
) -> ScOutput:
    """SC-decode channel LLRs, forcing the complement decision at ``flips``.

    Parameters
    ----------
    alpha_ch : array_like
        Channel-domain LLRs, length N, finite.
    flips : sequence of int
        Strictly increasing information indices to force-flip.
    llr_mode : {"minsum", "exact"}
        LLR combine rule for the upper branch.
    pm_mode : {"hard", "exact"}
        Path-metric form reported on the output.
    """
    if llr_mode not in LLR_MODES:
        raise ValueError(f"llr_mode must be one of {LLR_MODES}, got {llr_mode!r}")
    if pm_mode not in PM_MODES:
        raise ValueError(f"pm_mode must be one of {PM_MODES}, got {pm_mode!r}")
    alpha = np.ascontiguousarray(alpha_ch, dtype=np.float64)
    if alpha.shape != (spec.N,):
        raise ValueError(f"alpha_ch must have shape ({spec.N},), got {alpha.shape}")
    if not np.isfinite(alpha).all():
        raise ValueError("alpha_ch must be finite")
    flips = _as_flips(spec, flips)
    flip_mask = _flip_mask(spec, flips)
    u_hat, alpha_u = _kernels.sc_pass(alpha, spec.frozen_mask, flip_mask, spec.m, llr_mode == "exact")
    pm, _ = _kernels.penalty_prefix_and_pm(alpha_u, spec.frozen_mask, flip_mask, pm_mode == "exact")
    return ScOutput(u_hat=u_hat, alpha_u=alpha_u, pm=float(pm))


def path_metric(alpha_u, spec: CodeSpec, flips=(), pm_mode: str = "hard") -> float:
    """Path metric of a candidate from its decision-domain LLRs.

    Hard mode: sum over frozen sign mismatches of |alpha| plus |alpha| at
    every flip index. Exact mode: sum over all positions of
    log(1 + exp(-(1 - 2 u) alpha)) with u the decision actually taken.
    """
    if pm_mode not in PM_MODES:
        raise ValueError(f"pm_mode must be one of {PM_MODES}, got {pm_mode!r}")
    alpha_u = np.ascontiguousarray(alpha_u, dtype=np.float64)
    if alpha_u.shape != (spec.N,):
        raise ValueError(f"alpha_u must have shape ({spec.N},), got {alpha_u.shape}")
    flips = _as_flips(spec, flips)
    pm, _ = _kernels.penalty_prefix_and_pm(
        alpha_u, spec.frozen_mask, _flip_mask(spec, flips), pm_mode == "exact"
    )
    return float(pm)


def pm_lower_bound(alpha_u, spec: CodeSpec, flips, i: int) -> float:
    """Lower bound on the path metric of the child that flips index i.

    Computed from the parent's decision-domain LLRs: frozen mismatch
    penalties below i, plus |alpha| at the existing flips, plus |alpha_i|.
    Every descendant of that child shares this prefix, so its full metric
    can only be larger.
    """
    alpha_u = np.ascontiguousarray(alpha_u, dtype=np.float64)
    if alpha_u.shape != (spec.N,):
        raise ValueError(f"alpha_u must have shape ({spec.N},), got {alpha_u.shape}")
    flips = _as_flips(spec, flips)
    i = int(i)
    if not 0 <= i < spec.N or spec.frozen_mask[i]:
        raise ValueError(f"flip index {i} is not an information position")
    if flips and i <= flips[-1]:
        raise ValueError(f"flip index {i} must exceed max existing flip {flips[-1]}")
    _, prefix = _kernels.penalty_prefix_and_pm(
        alpha_u, spec.frozen_mask, _flip_mask(spec, flips), False
    )
    return float(prefix[i] + abs(alpha_u[i]))
