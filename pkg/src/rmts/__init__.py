"""Reed-Muller codes with successive-cancellation bit-flipping tree-search decoders.

The package provides:

* ``rm_code``     -- RM(r, m) construction (weight rule) and butterfly encoding.
* ``channel``     -- BPSK, seeded AWGN, channel LLRs, Eb/N0 bookkeeping.
* ``sc_core``     -- SC decoding with forced bit-flips and path metrics.
* ``tree_search`` -- DFS/BFS bit-flipping tree decoders with pruning,
                     depth limiting, and LLR-based visit ordering.
* ``oracle``      -- brute-force maximum-likelihood reference decoder.
* ``harness``     -- Monte Carlo FER/complexity sweeps with CSV output.
"""

from .channel import ChannelParams, add_noise, ebn0_to_sigma2, frame_rng, llr_init, modulate
from .errors import ResourceLimitError
from .harness import SimConfig, SimPoint, run_point, run_sweep, write_csv
from .oracle import OracleResult, enumerate_codewords, ml_decode_bruteforce
from .rm_code import CodeSpec, build_code, butterfly_transform, encode
from .sc_core import (
    ScOutput,
    f_exact,
    f_minsum,
    g_combine,
    hard_decision,
    path_metric,
    pm_lower_bound,
    sc_decode,
)
from .tree_search import (
    DecodeResult,
    SearchConfig,
    WorstCaseBounds,
    decode,
    effective_flip_indices,
    order_metric,
    ts_bfs,
    ts_dfs,
    worst_case_bounds,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelParams",
    "CodeSpec",
    "DecodeResult",
    "OracleResult",
    "ResourceLimitError",
    "ScOutput",
    "SearchConfig",
    "SimConfig",
    "SimPoint",
    "WorstCaseBounds",
    "add_noise",
    "build_code",
    "butterfly_transform",
    "decode",
    "ebn0_to_sigma2",
    "effective_flip_indices",
    "encode",
    "enumerate_codewords",
    "f_exact",
    "f_minsum",
    "frame_rng",
    "g_combine",
    "hard_decision",
    "llr_init",
    "ml_decode_bruteforce",
    "modulate",
    "order_metric",
    "path_metric",
    "pm_lower_bound",
    "run_point",
    "run_sweep",
    "sc_decode",
    "ts_bfs",
    "ts_dfs",
    "worst_case_bounds",
    "write_csv",
]
