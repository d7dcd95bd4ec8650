"""Monte Carlo FER/complexity harness.

Each frame draws a random message, encodes, modulates, adds seeded AWGN,
decodes with the configured decoder, and counts a frame error when the
decoded information bits differ from the transmitted ones. Frames own
independent RNG substreams keyed by (seed, frame index), so aggregates are
bit-identical for any worker count; early stopping truncates at the exact
frame where the error cap is reached, which is likewise chunk- and
worker-independent.

Complexity is counted in SC decoding attempts. The plain SC decoder is one
attempt per frame by definition; the brute-force ML decoder performs no SC
passes and reports 1.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from io import StringIO
from typing import Callable, Optional

import numpy as np

from .channel import add_noise, ebn0_to_sigma2, frame_rng, llr_init, modulate
from .oracle import K_CAP, ml_decode_bruteforce
from .rm_code import build_code, encode
from .sc_core import LLR_MODES, PM_MODES, sc_decode
from .tree_search import SearchConfig, decode

DECODERS = ("sc", "ts-dfs", "ts-bfs", "ts-dfs-o", "ts-bfs-o", "oracle")

CSV_SCHEMA_VERSION = 1
CSV_FIELDS = (
    "schema_version",
    "m",
    "r",
    "N",
    "K",
    "decoder",
    "omega",
    "llr_mode",
    "pm_mode",
    "beta",
    "seed",
    "max_frames",
    "max_errors",
    "ebn0_db",
    "sigma2",
    "frames_run",
    "frame_errors",
    "fer",
    "total_attempts",
    "avg_attempts",
    "max_attempts",
)

_CHUNK = 512

# Per-visit trace: (frame, flips, pm_tmp, pm, pm_best). Only the tree
# decoders emit records, and tracing requires workers == 1.
PointTraceFn = Callable[[int, tuple, Optional[float], float, float], None]


@dataclass(frozen=True)
class SimConfig:
    """One simulation: a code, a decoder, a grid, and reproducibility knobs."""

    m: int
    r: int
    decoder: str = "ts-bfs"
    omega: int | None = None
    ebn0_grid: tuple[float, ...] = (0.0, 1.0, 2.0)
    max_frames: int = 10_000
    max_frame_errors: int | None = 100
    seed: int = 0
    llr_mode: str = "minsum"
    pm_mode: str = "hard"
    beta: float = 0.8
    workers: int = 1
    noiseless: bool = False  # test hook: transmit with z = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "ebn0_grid", tuple(float(e) for e in self.ebn0_grid))
        object.__setattr__(self, "decoder", self.decoder.lower())
        if self.decoder not in DECODERS:
            raise ValueError(f"decoder must be one of {DECODERS}, got {self.decoder!r}")
        if self.max_frames < 1:
            raise ValueError(f"max_frames must be >= 1, got {self.max_frames}")
        if not self.ebn0_grid:
            raise ValueError("ebn0_grid must be nonempty")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.llr_mode not in LLR_MODES:
            raise ValueError(f"llr_mode must be one of {LLR_MODES}, got {self.llr_mode!r}")
        if self.pm_mode not in PM_MODES:
            raise ValueError(f"pm_mode must be one of {PM_MODES}, got {self.pm_mode!r}")


@dataclass(frozen=True)
class SimPoint:
    """Aggregates for one (decoder, Eb/N0) grid point."""

    ebn0_db: float
    sigma2: float
    frames_run: int
    frame_errors: int
    fer: float
    total_attempts: int
    avg_attempts: float
    max_attempts: int
    wall_seconds: float


def _search_config(cfg: SimConfig) -> SearchConfig | None:
    if cfg.decoder in ("sc", "oracle"):
        return None
    strategy = "dfs" if cfg.decoder.startswith("ts-dfs") else "bfs"
    return SearchConfig(
        strategy=strategy,
        omega=cfg.omega,
        ordered=cfg.decoder.endswith("-o"),
        beta=cfg.beta,
        llr_mode=cfg.llr_mode,
        pm_mode=cfg.pm_mode,
    )


def _preflight(cfg: SimConfig) -> None:
    spec = build_code(cfg.m, cfg.r)  # validates (m, r)
    if cfg.decoder == "oracle" and spec.K > K_CAP:
        raise ValueError(f"oracle decoder needs K <= {K_CAP}, got K={spec.K}")
    _search_config(cfg)  # validates omega/beta/modes for tree decoders


def _run_frames(
    cfg: SimConfig,
    ebn0_db: float,
    lo: int,
    hi: int,
    trace: PointTraceFn | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Decode frames [lo, hi); returns per-frame (error flag, attempts)."""
    spec = build_code(cfg.m, cfg.r)
    sigma2 = ebn0_to_sigma2(ebn0_db, spec.K / spec.N)
    scfg = _search_config(cfg)
    errs = np.zeros(hi - lo, dtype=np.uint8)
    atts = np.ones(hi - lo, dtype=np.int64)
    for t, frame in enumerate(range(lo, hi)):
        rng = frame_rng(cfg.seed, frame)
        msg = rng.integers(0, 2, size=spec.K, dtype=np.uint8)
        x = encode(spec, msg)
        s = modulate(x)
        y = s if cfg.noiseless else add_noise(s, sigma2, rng)
        if cfg.decoder == "oracle":
            res = ml_decode_bruteforce(y, spec)
            errs[t] = not np.array_equal(res.x_ml, x)
            continue
        alpha = llr_init(y, sigma2)
        if cfg.decoder == "sc":
            out = sc_decode(alpha, spec, (), llr_mode=cfg.llr_mode, pm_mode=cfg.pm_mode)
            u_best = out.u_hat
        else:
            assert scfg is not None
            node_trace = None
            if trace is not None:
                node_trace = lambda flips, pm_tmp, pm, pm_best: trace(frame, flips, pm_tmp, pm, pm_best)
            result = decode(alpha, spec, scfg, trace=node_trace)
            u_best = result.u_best
            atts[t] = result.sc_attempts
        errs[t] = not np.array_equal(u_best[spec.info], msg)
    return errs, atts


def run_point(cfg: SimConfig, ebn0_db: float, trace: PointTraceFn | None = None) -> SimPoint:
    """Simulate one grid point, honoring the early-stop error cap."""
    _preflight(cfg)
    if trace is not None and cfg.workers != 1:
        raise ValueError("tracing requires workers == 1")
    t0 = time.perf_counter()

    cap = cfg.max_frame_errors if cfg.max_frame_errors and cfg.max_frame_errors > 0 else None
    bounds = [(lo, min(lo + _CHUNK, cfg.max_frames)) for lo in range(0, cfg.max_frames, _CHUNK)]
    err_parts: list[np.ndarray] = []
    att_parts: list[np.ndarray] = []

    if cfg.workers == 1:
        errors_so_far = 0
        for lo, hi in bounds:
            e, a = _run_frames(cfg, ebn0_db, lo, hi, trace)
            err_parts.append(e)
            att_parts.append(a)
            errors_so_far += int(e.sum())
            if cap is not None and errors_so_far >= cap:
                break
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            pending = []
            it = iter(bounds)
            # Keep a bounded lookahead in flight; consume strictly in
            # submission order so truncation below sees frames in order.
            for _ in range(2 * cfg.workers):
                nxt = next(it, None)
                if nxt is None:
                    break
                pending.append(pool.submit(_run_frames, cfg, ebn0_db, nxt[0], nxt[1]))
            errors_so_far = 0
            while pending:
                fut = pending.pop(0)
                e, a = fut.result()
                err_parts.append(e)
                att_parts.append(a)
                errors_so_far += int(e.sum())
                if cap is not None and errors_so_far >= cap:
                    for f in pending:
                        f.cancel()
                    break
                nxt = next(it, None)
                if nxt is not None:
                    pending.append(pool.submit(_run_frames, cfg, ebn0_db, nxt[0], nxt[1]))

    errs = np.concatenate(err_parts)
    atts = np.concatenate(att_parts)
    if cap is not None:
        cum = np.cumsum(errs)
        if cum[-1] >= cap:
            stop = int(np.argmax(cum >= cap))
            errs = errs[: stop + 1]
            atts = atts[: stop + 1]

    frames_run = int(errs.size)
    frame_errors = int(errs.sum())
    total_attempts = int(atts.sum())
    return SimPoint(
        ebn0_db=ebn0_db,
        sigma2=ebn0_to_sigma2(ebn0_db, _rate(cfg)),
        frames_run=frames_run,
        frame_errors=frame_errors,
        fer=frame_errors / frames_run,
        total_attempts=total_attempts,
        avg_attempts=total_attempts / frames_run,
        max_attempts=int(atts.max()),
        wall_seconds=time.perf_counter() - t0,
    )


def _rate(cfg: SimConfig) -> float:
    spec = build_code(cfg.m, cfg.r)
    return spec.K / spec.N


def run_sweep(cfg: SimConfig, trace: PointTraceFn | None = None) -> list[SimPoint]:
    """Run every grid point in order."""
    return [run_point(cfg, e, trace) for e in cfg.ebn0_grid]


def csv_string(cfg: SimConfig, points: list[SimPoint]) -> str:
    """Render results as RFC-4180-style CSV (header + one row per point).

    wall_seconds is deliberately not a column: rows must be byte-identical
    for identical seeds regardless of run or worker count.
    """
    spec = build_code(cfg.m, cfg.r)
    buf = StringIO()
    buf.write(",".join(CSV_FIELDS) + "\r\n")
    for p in points:
        row = (
            CSV_SCHEMA_VERSION,
            cfg.m,
            cfg.r,
            spec.N,
            spec.K,
            cfg.decoder,
            "unlimited" if cfg.omega is None else cfg.omega,
            cfg.llr_mode,
            cfg.pm_mode,
            repr(cfg.beta),
            cfg.seed,
            cfg.max_frames,
            0 if cfg.max_frame_errors is None else cfg.max_frame_errors,
            repr(p.ebn0_db),
            repr(p.sigma2),
            p.frames_run,
            p.frame_errors,
            repr(p.fer),
            p.total_attempts,
            repr(p.avg_attempts),
            p.max_attempts,
        )
        buf.write(",".join(str(v) for v in row) + "\r\n")
    return buf.getvalue()


def write_csv(cfg: SimConfig, points: list[SimPoint], path) -> None:
    """Write the CSV document to a path or file-like object."""
    text = csv_string(cfg, points)
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)
