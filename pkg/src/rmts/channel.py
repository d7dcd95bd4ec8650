"""BPSK modulation, seeded AWGN, channel LLRs, and Eb/N0 bookkeeping.

Noise reproducibility uses the counter-based Philox generator keyed by
(master seed, frame index), so every frame owns an independent substream
and results do not depend on worker count or execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ChannelParams:
    """Noise variance plus the Eb/N0 point and code rate it came from."""

    sigma2: float
    ebn0_db: float
    rate: float

    @classmethod
    def from_ebn0(cls, ebn0_db: float, rate: float) -> "ChannelParams":
        return cls(sigma2=ebn0_to_sigma2(ebn0_db, rate), ebn0_db=ebn0_db, rate=rate)


def ebn0_to_sigma2(ebn0_db: float, rate: float) -> float:
    """Noise variance for a given Eb/N0 (dB) and code rate.

    Convention: unit BPSK symbol energy, Eb counted per information bit,
    giving sigma^2 = 1 / (2 * rate * 10^(EbN0/10)).
    """
    if not 0.0 < rate <= 1.0:
        raise ValueError(f"rate must be in (0, 1], got {rate}")
    return 1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0))


def modulate(x) -> np.ndarray:
    """BPSK map: bit 0 -> +1, bit 1 -> -1."""
    return 1.0 - 2.0 * np.asarray(x, dtype=np.float64)


def add_noise(s: np.ndarray, sigma2: float, rng: np.random.Generator) -> np.ndarray:
    """Add i.i.d. zero-mean Gaussian noise of variance sigma2."""
    if sigma2 <= 0.0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    s = np.asarray(s, dtype=np.float64)
    return s + rng.normal(0.0, math.sqrt(sigma2), size=s.shape)


def llr_init(y, sigma2: float) -> np.ndarray:
    """Channel LLRs for BPSK over AWGN: 2 y / sigma^2."""
    if sigma2 <= 0.0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    return (2.0 / sigma2) * np.asarray(y, dtype=np.float64)


def frame_rng(seed: int, frame: int) -> np.random.Generator:
    """Independent per-frame generator from (master seed, frame index).

    Philox is counter-based; keying it with both values yields substreams
    that are reproducible across runs, platforms, and worker counts.
    """
    if frame < 0:
        raise ValueError(f"frame index must be >= 0, got {frame}")
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, frame], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
