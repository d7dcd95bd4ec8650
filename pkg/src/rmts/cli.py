"""Command-line front end for the Monte Carlo harness.

Example:

    rmts --m 7 --r 3 --decoder ts-bfs --omega 4 \\
         --ebn0-start 1 --ebn0-stop 3 --ebn0-step 0.5 \\
         --frames 10000 --max-errors 100 --seed 1 --out results.csv
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ResourceLimitError
from .harness import DECODERS, SimConfig, csv_string, run_sweep


def _parse_omega(text: str) -> int | None:
    if text.lower() == "unlimited":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"omega must be an integer or 'unlimited', got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"omega must be >= 0, got {value}")
    return value


def _parse_ebn0_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad Eb/N0 list: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rmts",
        description="Reed-Muller Monte Carlo FER/complexity simulation",
    )
    p.add_argument("--m", type=int, required=True, help="log2 of the block length")
    p.add_argument("--r", type=int, required=True, help="code order")
    p.add_argument("--decoder", type=str.lower, choices=DECODERS, default="ts-bfs")
    p.add_argument("--omega", type=_parse_omega, default=None,
                   help="maximum flips per candidate (integer or 'unlimited', default unlimited)")
    p.add_argument("--ebn0-start", type=float, default=None)
    p.add_argument("--ebn0-stop", type=float, default=None)
    p.add_argument("--ebn0-step", type=float, default=1.0)
    p.add_argument("--ebn0-list", type=_parse_ebn0_list, default=None,
                   help="comma-separated Eb/N0 values in dB (overrides start/stop/step)")
    p.add_argument("--frames", type=int, default=10_000)
    p.add_argument("--max-errors", type=int, default=100,
                   help="stop a grid point after this many frame errors (0 disables)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--beta", type=float, default=0.8)
    p.add_argument("--llr-mode", choices=("minsum", "exact"), default="minsum")
    p.add_argument("--pm-mode", choices=("hard", "exact"), default="hard")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    p.add_argument("--trace", default=None,
                   help="write one JSON line per tree-node visit (requires --workers 1)")
    return p


def _grid(args: argparse.Namespace) -> tuple[float, ...]:
    if args.ebn0_list is not None:
        return args.ebn0_list
    if args.ebn0_start is None or args.ebn0_stop is None:
        raise ValueError("provide --ebn0-list or both --ebn0-start and --ebn0-stop")
    if args.ebn0_step <= 0:
        raise ValueError(f"--ebn0-step must be positive, got {args.ebn0_step}")
    grid = []
    value = args.ebn0_start
    while value <= args.ebn0_stop + 1e-9:
        grid.append(round(value, 10))
        value += args.ebn0_step
    return tuple(grid)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = SimConfig(
            m=args.m,
            r=args.r,
            decoder=args.decoder,
            omega=args.omega,
            ebn0_grid=_grid(args),
            max_frames=args.frames,
            max_frame_errors=args.max_errors if args.max_errors > 0 else None,
            seed=args.seed,
            llr_mode=args.llr_mode,
            pm_mode=args.pm_mode,
            beta=args.beta,
            workers=args.workers,
        )
        if args.trace is not None and cfg.workers != 1:
            raise ValueError("--trace requires --workers 1")
    except ValueError as exc:
        print(f"rmts: config error: {exc}", file=sys.stderr)
        return 2

    trace_fh = None
    try:
        if args.trace is not None:
            trace_fh = open(args.trace, "w")

            def trace(frame, flips, pm_tmp, pm, pm_best):
                trace_fh.write(json.dumps({
                    "frame": frame,
                    "flips": list(flips),
                    "pm_tmp": pm_tmp,
                    "pm": pm,
                    "pm_best": pm_best,
                }) + "\n")
        else:
            trace = None

        points = run_sweep(cfg, trace)
        text = csv_string(cfg, points)
        if args.out is None:
            sys.stdout.write(text)
        else:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
    except (ValueError, ResourceLimitError) as exc:
        print(f"rmts: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"rmts: i/o error: {exc}", file=sys.stderr)
        return 1
    finally:
        if trace_fh is not None:
            trace_fh.close()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
