"""Brute-force maximum-likelihood reference decoder for small codes.

For BPSK over AWGN, the ML codeword maximizes the correlation between the
received vector and the modulated codeword (equivalently, minimizes the
Euclidean distance). The decoder enumerates all 2^K codewords in message
counter order, batch-encoding chunks so the work stays vectorized.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import ResourceLimitError
from .rm_code import CodeSpec, build_code, butterfly_transform

K_CAP = 24
TIE_TOL = 1e-9
_CHUNK = 4096
_FULL_CODEBOOK_K = 13  # keep whole +-1 codebooks in memory up to 2^13 rows


@dataclass(frozen=True)
class OracleResult:
    """ML codeword, its correlation, and how many codewords tie for it."""

    x_ml: np.ndarray
    correlation: float
    tie_count: int


def _check_cap(spec: CodeSpec) -> None:
    if spec.K > K_CAP:
        raise ResourceLimitError(f"brute force capped at K <= {K_CAP}, got K={spec.K}")


def _codeword_chunks(spec: CodeSpec, chunk: int = _CHUNK) -> Iterator[np.ndarray]:
    """Yield all 2^K codewords as 2D uint8 chunks, message counter order.

    Message bit j (information position spec.info[j]) is bit j of the
    counter, so each chunk is a batch butterfly over consecutive counters.
    """
    total = 1 << spec.K
    shifts = np.arange(spec.K, dtype=np.uint64)
    for lo in range(0, total, chunk):
        hi = min(lo + chunk, total)
        counters = np.arange(lo, hi, dtype=np.uint64)
        bits = ((counters[:, None] >> shifts) & 1).astype(np.uint8)
        u = np.zeros((hi - lo, spec.N), dtype=np.uint8)
        u[:, spec.info] = bits
        yield butterfly_transform(u)


def enumerate_codewords(spec: CodeSpec) -> Iterator[np.ndarray]:
    """Yield every codeword exactly once (order unspecified to callers)."""
    _check_cap(spec)
    for block in _codeword_chunks(spec):
        yield from block


@lru_cache(maxsize=4)
def _signed_codebook(m: int, r: int) -> np.ndarray:
    """All 2^K codewords of RM(r, m) as BPSK rows (+1/-1 float64)."""
    spec = build_code(m, r)
    blocks = [1.0 - 2.0 * b.astype(np.float64) for b in _codeword_chunks(spec, chunk=1 << 14)]
    return np.vstack(blocks)


def ml_decode_bruteforce(y, spec: CodeSpec) -> OracleResult:
    """Exhaustive ML decode of a received vector.

    Small codebooks (K <= 13) stay cached as one signed matrix and take a
    single vectorized pass; larger ones stream in chunks, one pass for the
    maximum and one to count ties within TIE_TOL and keep the first argmax.
    """
    _check_cap(spec)
    y = np.ascontiguousarray(y, dtype=np.float64)
    if y.shape != (spec.N,):
        raise ValueError(f"y must have shape ({spec.N},), got {y.shape}")

    if spec.K <= _FULL_CODEBOOK_K:
        signed = _signed_codebook(spec.m, spec.r)
        corr = signed @ y
        best = float(corr.max())
        near = corr >= best - TIE_TOL
        first = int(np.argmax(near))
        x_ml = ((1.0 - signed[first]) / 2.0).astype(np.uint8)
        return OracleResult(x_ml=x_ml, correlation=best, tie_count=int(np.count_nonzero(near)))

    best = -np.inf
    for block in _codeword_chunks(spec):
        corr = (1.0 - 2.0 * block.astype(np.float64)) @ y
        m = float(corr.max())
        if m > best:
            best = m

    tie_count = 0
    x_ml: np.ndarray | None = None
    for block in _codeword_chunks(spec):
        corr = (1.0 - 2.0 * block.astype(np.float64)) @ y
        near = corr >= best - TIE_TOL
        tie_count += int(np.count_nonzero(near))
        if x_ml is None and near.any():
            x_ml = block[int(np.argmax(near))].copy()

    assert x_ml is not None
    return OracleResult(x_ml=x_ml, correlation=best, tie_count=tie_count)
