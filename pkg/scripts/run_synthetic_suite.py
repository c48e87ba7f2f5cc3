#!/usr/bin/env python3
"""Run the synthetic bound-verification experiments.

Desk scale (default) finishes in a few minutes on a laptop; --full uses
the full grids (m up to 10000, d up to 1000, 100 averaging repeats) and
can run for hours. Results land under --out as CSV + SVG + manifest
per experiment plus the confidence table.
"""

import argparse
import os
import sys

from boostbound.cli import dispatch

DESK = {
    "t-sweep": ["--d", "50", "--m", "1000", "--t-max", "100", "--repeats", "10"],
    "m-sweep": ["--d", "25", "--m-min", "10", "--m-max", "2000", "--m-step", "50",
                "--repeats", "3"],
    "d-sweep": ["--m", "500", "--d-min", "5", "--d-max", "200", "--d-step", "15",
                "--repeats", "3"],
    "confidence": ["--m-min", "10", "--m-max", "2000", "--m-step", "50",
                   "--d-min", "5", "--d-max", "200", "--d-step", "15",
                   "--repeats", "3"],
}

FULL = {
    "t-sweep": ["--d", "50", "--m", "1000", "--t-max", "100", "--repeats", "100"],
    "m-sweep": ["--d", "25", "--m-min", "10", "--m-max", "10000", "--m-step", "10"],
    "d-sweep": ["--m", "500", "--d-min", "5", "--d-max", "1000", "--d-step", "5"],
    "confidence": ["--m-min", "10", "--m-max", "10000", "--m-step", "10",
                   "--d-min", "5", "--d-max", "1000", "--d-step", "5"],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results/synthetic")
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--full", action="store_true", help="original full-scale grids")
    args = ap.parse_args()

    grids = FULL if args.full else DESK
    for mode, flags in grids.items():
        out = os.path.join(args.out, mode)
        print(f"== exp {mode} -> {out}")
        code = dispatch(
            ["exp", mode, *flags,
             "--seed", str(args.seed), "--workers", str(args.workers), "--out", out]
        )
        if code != 0:
            sys.exit(code)


if __name__ == "__main__":
    main()
