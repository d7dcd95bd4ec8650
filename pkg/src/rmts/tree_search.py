"""Bit-flipping tree search on top of repeated SC decoding.

A tree node is a set of forced-flip indices E; its SC decode yields a
candidate and a path metric. Children extend E with one larger flip index,
and a child is decoded only when the prefix bound computed from the parent's
decision LLRs beats the best metric found so far. Depth-first and
breadth-first traversals are provided, optionally depth-limited and
optionally visiting siblings (DFS) or whole levels (BFS) in ascending order
of an LLR reliability metric instead of natural index order.

Flip candidates are restricted to information indices below the last frozen
index: decisions after it always follow their LLR sign, so flipping there
can only add penalty. This keeps the search exact while shrinking the worst
case to 2^(K - k_tail) SC attempts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .errors import ResourceLimitError
from .rm_code import CodeSpec
from .sc_core import LLR_MODES, PM_MODES

# One record per node visit: (flips, pm_tmp or None for the root,
# pm after decode, pm_best after a possible update).
TraceFn = Callable[[tuple, Optional[float], float, float], None]

STRATEGIES = ("dfs", "bfs")


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for one tree-search decode.

    ``omega`` is the maximum number of simultaneous flips (tree depth);
    None means unlimited. ``ordered`` switches sibling/level visiting from
    natural index order to ascending reliability metric with weight
    ``beta``. ``prune`` and ``restrict_to_pre_frozen`` are test hooks:
    production decoding keeps both True.
    """

    strategy: str = "dfs"
    omega: int | None = None
    ordered: bool = False
    beta: float = 0.8
    llr_mode: str = "minsum"
    pm_mode: str = "hard"
    bfs_frontier_cap: int | None = None
    prune: bool = True
    restrict_to_pre_frozen: bool = True

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        if self.omega is not None and (not isinstance(self.omega, int) or self.omega < 0):
            raise ValueError(f"omega must be None or an integer >= 0, got {self.omega!r}")
        if not self.beta > 0.0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if self.llr_mode not in LLR_MODES:
            raise ValueError(f"llr_mode must be one of {LLR_MODES}, got {self.llr_mode!r}")
        if self.pm_mode not in PM_MODES:
            raise ValueError(f"pm_mode must be one of {PM_MODES}, got {self.pm_mode!r}")
        if self.bfs_frontier_cap is not None and self.bfs_frontier_cap < 1:
            raise ValueError(f"bfs_frontier_cap must be None or >= 1, got {self.bfs_frontier_cap}")


@dataclass(frozen=True)
class DecodeResult:
    """Best candidate found plus traversal accounting."""

    u_best: np.ndarray
    pm_best: float
    sc_attempts: int
    pruned_children: int
    max_depth_reached: int


@dataclass(frozen=True)
class WorstCaseBounds:
    """Attempt-count ceilings for one (code, omega) combination."""

    full_tree: int
    depth_limited: int
    last_frozen_restricted: int
    effective: int


def effective_flip_indices(spec: CodeSpec) -> np.ndarray:
    """Information indices below the last frozen index; empty for rate 1."""
    if spec.last_frozen is None:
        return spec.info[:0]
    return spec.info[spec.info < spec.last_frozen]


def worst_case_bounds(spec: CodeSpec, omega: int | None) -> WorstCaseBounds:
    """Exact-integer worst-case SC attempt counts.

    full_tree: 2^K nodes of the unrestricted tree. depth_limited:
    sum_{i<=omega} C(K, i). last_frozen_restricted: 2^(K - k_tail).
    effective: the operative bound with both restrictions,
    sum_{i<=min(omega, K-k_tail)} C(K - k_tail, i).
    """
    k = spec.K
    k_eff = k - spec.k_tail
    depth_full = k if omega is None else min(omega, k)
    depth_eff = k_eff if omega is None else min(omega, k_eff)
    return WorstCaseBounds(
        full_tree=1 << k,
        depth_limited=sum(math.comb(k, i) for i in range(depth_full + 1)),
        last_frozen_restricted=1 << k_eff,
        effective=sum(math.comb(k_eff, i) for i in range(depth_eff + 1)),
    )


def order_metric(alpha_u, spec: CodeSpec, flips, i: int, beta: float = 0.8) -> float:
    """Reliability metric used to order node visits.

    Sum of |alpha| over the flip set including i, plus the reliability
    shortfall max(0, beta - |alpha_j|) over every information index j <= i.
    Smaller means the flip set more plausibly explains the SC failure.
    """
    alpha_u = np.ascontiguousarray(alpha_u, dtype=np.float64)
    if alpha_u.shape != (spec.N,):
        raise ValueError(f"alpha_u must have shape ({spec.N},), got {alpha_u.shape}")
    i = int(i)
    if not 0 <= i < spec.N or spec.frozen_mask[i]:
        raise ValueError(f"index {i} is not an information position")
    flips = tuple(int(j) for j in flips)
    cand = np.array([i], dtype=np.int64)
    return float(_order_metrics(alpha_u, spec, flips, cand, beta)[0])


def _order_metrics(alpha_u, spec: CodeSpec, flips, cand: np.ndarray, beta: float) -> np.ndarray:
    abs_a = np.abs(alpha_u)
    flip_sum = 0.0
    for j in flips:
        flip_sum += abs_a[j]
    shortfall_cum = np.cumsum(np.maximum(0.0, beta - abs_a[spec.info]))
    pos = np.searchsorted(spec.info, cand)
    return flip_sum + abs_a[cand] + shortfall_cum[pos]


def _validated_alpha(alpha_ch, spec: CodeSpec) -> np.ndarray:
    alpha = np.ascontiguousarray(alpha_ch, dtype=np.float64)
    if alpha.shape != (spec.N,):
        raise ValueError(f"alpha_ch must have shape ({spec.N},), got {alpha.shape}")
    if not np.isfinite(alpha).all():
        raise ValueError("alpha_ch must be finite")
    return alpha


def _flip_pool(spec: CodeSpec, cfg: SearchConfig) -> np.ndarray:
    return effective_flip_indices(spec) if cfg.restrict_to_pre_frozen else spec.info


def _children(eff: np.ndarray, flips: tuple, alpha_u, prefix) -> tuple[np.ndarray, np.ndarray]:
    """Candidate flip indices above max(flips) with their prefix bounds."""
    start = np.searchsorted(eff, flips[-1], side="right") if flips else 0
    cand = eff[start:]
    pm_tmp = prefix[cand] + np.abs(alpha_u[cand])
    return cand, pm_tmp


def ts_dfs(alpha_ch, spec: CodeSpec, cfg: SearchConfig, trace: TraceFn | None = None) -> DecodeResult:
    """Depth-first tree search (recursive)."""
    if cfg.strategy != "dfs":
        raise ValueError(f"ts_dfs needs strategy='dfs', got {cfg.strategy!r}")
    alpha = _validated_alpha(alpha_ch, spec)
    eff = _flip_pool(spec, cfg)
    depth_cap = len(eff) if cfg.omega is None else min(cfg.omega, len(eff))
    exact_llr = cfg.llr_mode == "exact"
    exact_pm = cfg.pm_mode == "exact"
    frozen = spec.frozen_mask

    best_u: np.ndarray | None = None
    best_pm = math.inf
    attempts = 0
    pruned = 0
    max_depth = 0

    def visit(flips: tuple, flip_mask: np.ndarray, pm_tmp: float | None) -> None:
        nonlocal best_u, best_pm, attempts, pruned, max_depth
        u_hat, alpha_u = _kernels.sc_pass(alpha, frozen, flip_mask, spec.m, exact_llr)
        pm, prefix = _kernels.penalty_prefix_and_pm(alpha_u, frozen, flip_mask, exact_pm)
        attempts += 1
        max_depth = max(max_depth, len(flips))
        if pm < best_pm:
            best_pm = pm
            best_u = u_hat
        if trace is not None:
            trace(flips, pm_tmp, float(pm), float(best_pm))
        if len(flips) >= depth_cap:
            return
        cand, pm_tmps = _children(eff, flips, alpha_u, prefix)
        if cfg.ordered and len(cand) > 1:
            metrics = _order_metrics(alpha_u, spec, flips, cand, cfg.beta)
            order = np.argsort(metrics, kind="stable")
        else:
            order = range(len(cand))
        for k in order:
            pt = float(pm_tmps[k])
            if cfg.prune and not pt < best_pm:
                pruned += 1
                continue
            i = int(cand[k])
            child_mask = flip_mask.copy()
            child_mask[i] = True
            visit(flips + (i,), child_mask, pt)

    visit((), np.zeros(spec.N, dtype=np.bool_), None)
    assert best_u is not None
    return DecodeResult(
        u_best=best_u,
        pm_best=float(best_pm),
        sc_attempts=attempts,
        pruned_children=pruned,
        max_depth_reached=max_depth,
    )


def ts_bfs(alpha_ch, spec: CodeSpec, cfg: SearchConfig, trace: TraceFn | None = None) -> DecodeResult:
    """Breadth-first tree search (level-ordered frontier)."""
    if cfg.strategy != "bfs":
        raise ValueError(f"ts_bfs needs strategy='bfs', got {cfg.strategy!r}")
    alpha = _validated_alpha(alpha_ch, spec)
    eff = _flip_pool(spec, cfg)
    depth_cap = len(eff) if cfg.omega is None else min(cfg.omega, len(eff))
    exact_llr = cfg.llr_mode == "exact"
    exact_pm = cfg.pm_mode == "exact"
    frozen = spec.frozen_mask

    u_hat, alpha_u = _kernels.sc_pass(alpha, frozen, np.zeros(spec.N, dtype=np.bool_), spec.m, exact_llr)
    pm, prefix = _kernels.penalty_prefix_and_pm(alpha_u, frozen, np.zeros(spec.N, dtype=np.bool_), exact_pm)
    best_u = u_hat
    best_pm = float(pm)
    attempts = 1
    pruned = 0
    max_depth = 0
    if trace is not None:
        trace((), None, float(pm), best_pm)

    # Frontier entries carry the node's flip set plus the decision LLRs and
    # penalty prefix needed to bound its children; memory is O(|frontier| N).
    frontier: list[tuple[tuple, np.ndarray, np.ndarray]] = []
    if depth_cap >= 1:
        frontier.append(((), alpha_u, prefix))

    depth = 1
    while frontier:
        # Candidate children of the whole level, in (frontier order,
        # ascending index) enumeration order.
        cands: list[tuple[int, int, float]] = []
        keys: list[float] = []
        for p_idx, (flips, a_u, pref) in enumerate(frontier):
            cand, pm_tmps = _children(eff, flips, a_u, pref)
            if cfg.ordered and len(cand):
                metrics = _order_metrics(a_u, spec, flips, cand, cfg.beta)
                keys.extend(float(v) for v in metrics)
            for k in range(len(cand)):
                cands.append((p_idx, int(cand[k]), float(pm_tmps[k])))
        if cfg.ordered and cands:
            pos = sorted(range(len(cands)), key=keys.__getitem__)  # stable
            cands = [cands[p] for p in pos]

        next_frontier: list[tuple[tuple, np.ndarray, np.ndarray]] = []
        for p_idx, i, pt in cands:
            if cfg.prune and not pt < best_pm:
                pruned += 1
                continue
            flips_child = frontier[p_idx][0] + (i,)
            mask = np.zeros(spec.N, dtype=np.bool_)
            mask[list(flips_child)] = True
            u_c, a_c = _kernels.sc_pass(alpha, frozen, mask, spec.m, exact_llr)
            pm_c, prefix_c = _kernels.penalty_prefix_and_pm(a_c, frozen, mask, exact_pm)
            attempts += 1
            max_depth = max(max_depth, depth)
            if pm_c < best_pm:
                best_pm = float(pm_c)
                best_u = u_c
            if trace is not None:
                trace(flips_child, pt, float(pm_c), best_pm)
            # Re-check the bound after the possible update before letting
            # the node spawn children; nodes at the depth cap never can.
            if depth < depth_cap and (not cfg.prune or pt < best_pm):
                next_frontier.append((flips_child, a_c, prefix_c))
                if cfg.bfs_frontier_cap is not None and len(next_frontier) > cfg.bfs_frontier_cap:
                    raise ResourceLimitError(
                        f"BFS frontier exceeded cap {cfg.bfs_frontier_cap} at depth {depth}"
                    )
        frontier = next_frontier
        depth += 1

    return DecodeResult(
        u_best=best_u,
        pm_best=best_pm,
        sc_attempts=attempts,
        pruned_children=pruned,
        max_depth_reached=max_depth,
    )


def decode(alpha_ch, spec: CodeSpec, cfg: SearchConfig, trace: TraceFn | None = None) -> DecodeResult:
    """Dispatch on the configured traversal strategy."""
    if cfg.strategy == "dfs":
        return ts_dfs(alpha_ch, spec, cfg, trace)
    return ts_bfs(alpha_ch, spec, cfg, trace)
