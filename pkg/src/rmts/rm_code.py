"""Reed-Muller code construction and encoding.

RM(r, m) has length N = 2^m and keeps as information positions the rows of
the m-fold Kronecker power of [[1, 0], [1, 1]] whose Hamming weight reaches
the minimum distance d = 2^(m-r); the remaining positions are frozen to 0.
Encoding multiplies by the Kronecker power in O(N log N) with an in-place
XOR butterfly rather than an explicit matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_M = 20


@dataclass(frozen=True, eq=False)
class CodeSpec:
    """Immutable description of one RM(r, m) code.

    Attributes
    ----------
    m, r : int
        Code parameters; N = 2^m, order r.
    N, K, d : int
        Block length, dimension, minimum distance.
    frozen : ndarray
        Sorted frozen indices (row weight < d).
    info : ndarray
        Sorted information indices (row weight >= d).
    frozen_mask : ndarray
        Boolean mask of length N, True at frozen positions.
    last_frozen : int or None
        Largest frozen index; None when the code is rate 1.
    k_tail : int
        Number of information indices above ``last_frozen`` (K when there
        are no frozen bits).
    """

    m: int
    r: int
    N: int
    K: int
    d: int
    frozen: np.ndarray
    info: np.ndarray
    frozen_mask: np.ndarray
    last_frozen: int | None
    k_tail: int

    def __str__(self) -> str:
        return (
            f"RM({self.r},{self.m}): N={self.N} K={self.K} d={self.d} "
            f"frozen={self.frozen.tolist()}"
        )


def build_code(m: int, r: int) -> CodeSpec:
    """Construct RM(r, m) by the row-weight rule.

    Row i of the Kronecker power has weight 2^popcount(i); position i is
    frozen iff that weight is below d = 2^(m-r), i.e. iff popcount(i) < m-r.
    Rows whose weight equals d are information positions.

    Raises
    ------
    ValueError
        If not 0 <= r <= m <= 20.
    """
    if not isinstance(m, int) or not isinstance(r, int):
        raise ValueError(f"m and r must be integers, got m={m!r} r={r!r}")
    if not (0 <= r <= m <= MAX_M):
        raise ValueError(f"need 0 <= r <= m <= {MAX_M}, got m={m} r={r}")

    n = 1 << m
    popcounts = np.fromiter((i.bit_count() for i in range(n)), dtype=np.int64, count=n)
    frozen_mask = popcounts < (m - r)
    frozen = np.flatnonzero(frozen_mask)
    info = np.flatnonzero(~frozen_mask)
    frozen_mask.setflags(write=False)
    frozen.setflags(write=False)
    info.setflags(write=False)

    if frozen.size:
        last_frozen = int(frozen[-1])
        k_tail = int(np.count_nonzero(info > last_frozen))
    else:
        # Rate-1 code: no frozen bits, every information bit counts as
        # "after the last frozen bit" so the effective flip set is empty.
        last_frozen = None
        k_tail = int(info.size)

    return CodeSpec(
        m=m,
        r=r,
        N=n,
        K=int(info.size),
        d=1 << (m - r),
        frozen=frozen,
        info=info,
        frozen_mask=frozen_mask,
        last_frozen=last_frozen,
        k_tail=k_tail,
    )


def butterfly_transform(bits: np.ndarray) -> np.ndarray:
    """Apply the Kronecker-power transform over GF(2) along the last axis.

    Works on any leading batch shape. The transform is an involution:
    applying it twice returns the input.
    """
    x = np.array(bits, dtype=np.uint8, copy=True)
    n = x.shape[-1]
    if n == 0 or n & (n - 1):
        raise ValueError(f"length must be a power of 2, got {n}")
    step = 2
    while step <= n:
        view = x.reshape(-1, step)
        half = step // 2
        view[:, :half] ^= view[:, half:]
        step *= 2
    return x


def encode(spec: CodeSpec, msg) -> np.ndarray:
    """Encode K message bits into a length-N codeword.

    The message fills the information positions of u in increasing index
    order (frozen positions stay 0); the codeword is u times the Kronecker
    power, computed by the butterfly.

    Raises
    ------
    ValueError
        If the message length is not K or contains non-binary values.
    """
    msg = np.asarray(msg, dtype=np.uint8)
    if msg.shape != (spec.K,):
        raise ValueError(f"message must have shape ({spec.K},), got {msg.shape}")
    if msg.size and msg.max() > 1:
        raise ValueError("message bits must be 0/1")
    u = np.zeros(spec.N, dtype=np.uint8)
    u[spec.info] = msg
    return butterfly_transform(u)
